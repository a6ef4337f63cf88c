#include "dholo/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <fmt/format.h>

#include "dholo/calculus.hpp"
#include "dholo/errors.hpp"
#include "dholo/integral.hpp"
#include "dholo/kernel_cache.hpp"

namespace dholo {

RateFit fit_rate(const std::vector<double>& h, const std::vector<double>& err) {
  if (h.size() != err.size()) throw std::invalid_argument("h and error lists differ in length");
  RateFit fit;
  std::vector<double> lx, ly;
  for (std::size_t k = 0; k < h.size(); ++k) {
    if (err[k] == 0.0) {
      ++fit.excluded_zero;
      continue;
    }
    if (!(err[k] > 0.0) || !(h[k] > 0.0)) throw std::invalid_argument("fit needs positive h and errors");
    lx.push_back(std::log(h[k]));
    ly.push_back(std::log(err[k]));
  }
  fit.used = lx.size();
  if (fit.used < 3) throw InsufficientData(fmt::format("{} positive points, need 3", fit.used));
  const double n = static_cast<double>(fit.used);
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < lx.size(); ++k) mx += lx[k], my += ly[k];
  mx /= n, my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < lx.size(); ++k) {
    sxx += (lx[k] - mx) * (lx[k] - mx);
    sxy += (lx[k] - mx) * (ly[k] - my);
  }
  if (sxx == 0.0) throw InsufficientData("all h values coincide");
  fit.slope = sxy / sxx;
  return fit;
}

LatticeSet study_set(const DomainSpec& domain, double h, std::optional<std::uint64_t> perturb_seed) {
  auto bh = discretize(domain, h);
  if (!perturb_seed || bh.empty()) return bh;
  std::mt19937_64 rng(*perturb_seed);
  std::vector<LatticePoint> pts(bh.begin(), bh.end());
  for (auto z : boundary_layers(bh).minus)
    if (rng() & 1u) pts.push_back(z);
  return LatticeSet(h, std::move(pts));
}

namespace {

std::optional<RateFit> try_fit(const std::vector<double>& h, const std::vector<double>& err) {
  try {
    return fit_rate(h, err);
  } catch (const InsufficientData&) {
    return std::nullopt;
  }
}

}  // namespace

ConvergenceReport run_study(const DomainSpec& domain, const FunctionSpec& fn, const std::vector<double>& h_list,
                            double quad_tol, const StudyOptions& options) {
  if (h_list.empty()) throw std::invalid_argument("empty h list");
  for (std::size_t k = 0; k < h_list.size(); ++k) {
    if (!(h_list[k] > 0.0)) throw std::invalid_argument("h values must be positive");
    if (k > 0 && !(h_list[k] < h_list[k - 1])) throw std::invalid_argument("h list must be strictly decreasing");
  }
  if (!(quad_tol > 0.0)) throw std::invalid_argument("quadrature tolerance must be positive");
  if (!fn.is_holomorphic()) throw std::invalid_argument("convergence study needs a holomorphic function");
  fn.require_regular_on(domain);

  std::vector<LatticeSet> sets;
  int radius = 2;
  for (double h : h_list) {
    sets.push_back(study_set(domain, h, options.perturb_seed));
    if (sets.size() == 1 && sets.front().empty()) throw Error("h too coarse: empty discretization");
    if (!sets.back().empty()) radius = std::max(radius, required_table_radius(sets.back(), sets.back()));
  }
  const auto provider = options.kernels ? options.kernels : KernelProvider(obtain_table);
  // One table, sized for the finest grid, serves every h.
  const auto table = provider(radius, quad_tol);

  ConvergenceReport report;
  report.h_values = h_list;
  report.domain = domain;
  report.function = fn;
  report.quad_tol = quad_tol;
  if (options.perturb_seed) {
    report.family = "perturbed";
    report.seed = options.perturb_seed;
  }

  for (std::size_t k = 0; k < h_list.size(); ++k) {
    const double h = h_list[k];
    const auto& bh = sets[k];
    if (bh.empty()) throw Error(fmt::format("empty discretization at h = {}", h));
    const BMKernelContext ctx(bh, table);
    const auto samples = sample(fn, closure(bh));
    const auto fh = ctx.boundary_reconstruct(samples, bh);
    auto inside = [&](LatticePoint z) { return domain.contains(z.position(h)); };

    double e0 = 0.0, e1 = 0.0, e2 = 0.0, vol = 0.0;
    for (auto z : bh) {
      if (!inside(z)) continue;
      e0 = std::max(e0, std::abs(fn.value(z.position(h)) - fh.at(z)));
    }
    const auto inner = interior(bh);
    GridFunction d1(h);
    for (auto z : inner) d1.set(z, dz(fh, z));
    for (auto z : inner)
      if (inside(z)) e1 = std::max(e1, std::abs(fn.dz(z.position(h)) - d1.at(z)));
    for (auto z : interior(inner))
      if (inside(z)) e2 = std::max(e2, std::abs(fn.dz2(z.position(h)) - dz(d1, z)));
    if (options.volume_terms) {
      const auto dbar_f = dbar_on(samples, bh);
      for (auto zeta : bh) {
        if (!inside(zeta)) continue;
        Complex v = 0.0;
        for (auto z : bh) {
          const Complex d = dbar_f.at(z);
          if (d != Complex{}) v += ctx.fundamental(zeta - z) * d;
        }
        vol = std::max(vol, std::abs(v) * h * h);
      }
    }
    report.err_value.push_back(e0);
    report.err_d1.push_back(e1);
    report.err_d2.push_back(e2);
    report.max_volume_term.push_back(vol);
  }
  report.rate_value = try_fit(report.h_values, report.err_value);
  report.rate_d1 = try_fit(report.h_values, report.err_d1);
  report.rate_d2 = try_fit(report.h_values, report.err_d2);
  return report;
}

namespace {

nlohmann::json fit_to_json(const std::optional<RateFit>& fit) {
  if (!fit) return nullptr;
  return {{"slope", fit->slope}, {"used", fit->used}, {"excluded_zero", fit->excluded_zero}};
}

std::optional<RateFit> fit_from_json(const nlohmann::json& j) {
  if (j.is_null()) return std::nullopt;
  return RateFit{j.at("slope").get<double>(), j.at("used").get<std::size_t>(),
                 j.at("excluded_zero").get<std::size_t>()};
}

}  // namespace

nlohmann::json report_to_json(const ConvergenceReport& r) {
  nlohmann::json meta = {{"domain", r.domain},     {"function", r.function}, {"quad_tol", r.quad_tol},
                         {"family", r.family},     {"seed", nullptr}};
  if (r.seed) meta["seed"] = *r.seed;
  return {{"h_values", r.h_values},
          {"err_value", r.err_value},
          {"err_d1", r.err_d1},
          {"err_d2", r.err_d2},
          {"max_volume_term", r.max_volume_term},
          {"rate_value", fit_to_json(r.rate_value)},
          {"rate_d1", fit_to_json(r.rate_d1)},
          {"rate_d2", fit_to_json(r.rate_d2)},
          {"metadata", meta}};
}

ConvergenceReport report_from_json(const nlohmann::json& j) {
  ConvergenceReport r;
  r.h_values = j.at("h_values").get<std::vector<double>>();
  r.err_value = j.at("err_value").get<std::vector<double>>();
  r.err_d1 = j.at("err_d1").get<std::vector<double>>();
  r.err_d2 = j.at("err_d2").get<std::vector<double>>();
  r.max_volume_term = j.value("max_volume_term", std::vector<double>{});
  r.rate_value = fit_from_json(j.at("rate_value"));
  r.rate_d1 = fit_from_json(j.at("rate_d1"));
  r.rate_d2 = fit_from_json(j.at("rate_d2"));
  const auto& meta = j.at("metadata");
  r.domain = meta.at("domain");
  r.function = meta.at("function");
  r.quad_tol = meta.at("quad_tol").get<double>();
  r.family = meta.at("family").get<std::string>();
  if (!meta.at("seed").is_null()) r.seed = meta.at("seed").get<std::uint64_t>();
  return r;
}

std::string emit_report(const ConvergenceReport& r, ReportFormat format) {
  if (format == ReportFormat::json) return report_to_json(r).dump(2) + "\n";
  std::string out = "h,err_value,err_d1,err_d2\n";
  for (std::size_t k = 0; k < r.h_values.size(); ++k)
    out += fmt::format("{:.17g},{:.17g},{:.17g},{:.17g}\n", r.h_values[k], r.err_value[k], r.err_d1[k], r.err_d2[k]);
  return out;
}

}  // namespace dholo
