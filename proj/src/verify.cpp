#include "dholo/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dholo/errors.hpp"
#include "dholo/geometry.hpp"
#include "dholo/integral.hpp"
#include "dholo/kernel.hpp"
#include "dholo/kernel_cache.hpp"

namespace dholo {

LatticeSet random_lattice_set(std::mt19937_64& rng, double h, std::size_t max_points) {
  std::uniform_int_distribution<std::size_t> count(1, max_points);
  std::uniform_int_distribution<int> coord(-12, 12);
  const std::size_t n = count(rng);
  std::vector<LatticePoint> pts;
  pts.reserve(n);
  for (std::size_t k = 0; k < n; ++k) pts.push_back({coord(rng), coord(rng)});
  return LatticeSet(h, std::move(pts));
}

GridFunction random_grid_function(std::mt19937_64& rng, const LatticeSet& support) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  GridFunction f(support.spacing());
  for (auto z : support) {
    const double re = u(rng);
    f.set(z, {re, u(rng)});
  }
  return f;
}

void to_json(nlohmann::json& j, const CheckResult& c) {
  j = {{"name", c.name}, {"value", c.value}, {"limit", c.limit}, {"pass", c.pass}};
}

double relative_greens_residual(const GridFunction& f, const BoundaryGeometry& geo) {
  const double h = geo.spacing();
  const double scale = f.sup_norm() * static_cast<double>(geo.base().size()) * h * h;
  double worst = 0.0;
  for (auto axis : {Axis::x, Axis::y})
    for (auto side : {Side::plus, Side::minus}) worst = std::max(worst, greens_residual(f, geo, axis, side));
  return scale > 0.0 ? worst / scale : worst;
}

double cauchy_pompeiu_budget(double achieved_residual, double f_sup, std::size_t closure_size, double h) {
  constexpr double c = 64.0;
  const double unit = std::max(achieved_residual, std::numeric_limits<double>::epsilon());
  return c * unit * f_sup * static_cast<double>(closure_size) * (1.0 + 1.0 / h);
}

namespace {

CheckResult check(std::string name, double value, double limit) {
  return {std::move(name), value, limit, value <= limit};
}

}  // namespace

std::vector<CheckResult> run_verify_suite(const VerifyOptions& o) {
  const auto bh = discretize(o.domain, o.h);
  if (bh.empty()) throw std::invalid_argument("domain has an empty discretization at this h");
  std::mt19937_64 rng(o.seed);
  std::vector<CheckResult> out;

  // Green and Stokes on a random corpus plus the domain discretization.
  double green = 0.0, flux = 0.0, norm = 0.0;
  for (std::size_t k = 0; k < o.random_sets; ++k) {
    const auto b = random_lattice_set(rng, o.h, 200);
    const BoundaryGeometry geo(b);
    green = std::max(green, relative_greens_residual(random_grid_function(rng, closure(b)), geo));
    const auto s = stokes_residual(geo);
    flux = std::max(flux, s.flux * o.h);
    norm = std::max(norm, s.norm);
  }
  BoundaryGeometry domain_geo(bh);
  if (o.fault == Fault::flip_normal) {
    auto n = domain_geo.normals()[0];
    n.n1p = -n.n1p, n.n1m = -n.n1m, n.n2p = -n.n2p, n.n2m = -n.n2m;
    domain_geo.override_normal(0, n);
  }
  green = std::max(green, relative_greens_residual(random_grid_function(rng, closure(bh)), domain_geo));
  const auto s = stokes_residual(domain_geo);
  flux = std::max(flux, s.flux * o.h);
  norm = std::max(norm, s.norm);
  out.push_back(check("greens_formula", green, 1e-12));
  out.push_back(check("stokes_flux", flux, 1e-12));
  out.push_back(check("normal_norm", norm, 1e-12));

  const auto layers = boundary_layers(bh);
  const auto cl = closure(bh);
  auto targets = dilate(dilate(cl));
  const int radius = std::max(16, required_table_radius(bh, targets) + 1);
  const auto table = obtain_table(radius, o.quad_tol);
  out.push_back(check("kernel_residual", residual_check(table->restricted(16), o.h), 10.0 * o.quad_tol));

  const BMKernelContext ctx(bh, table);
  {
    const auto f = random_grid_function(rng, cl);
    const double budget = cauchy_pompeiu_budget(table->achieved_residual(), f.sup_norm(), cl.size(), o.h);
    double worst = 0.0;
    for (auto zeta : dilate(cl)) {
      const auto t = ctx.cauchy_pompeiu_split(f, zeta);
      const Complex expected = bh.contains(zeta) ? f.at(zeta) : Complex{};
      worst = std::max(worst, std::abs(t.boundary_term + t.volume_term - expected));
    }
    out.push_back(check("cauchy_pompeiu", worst, budget));
  }
  {
    double worst = 0.0;
    for (const auto& fn : {FunctionSpec::polynomial({1.0}), FunctionSpec::polynomial({0.0, 1.0}),
                           FunctionSpec::polynomial({0.0, 0.0, 1.0})}) {
      const auto e = ctx.two_layer_check(sample(fn, cl));
      worst = std::max({worst, e.max_err_plus, e.max_err_minus});
    }
    out.push_back(check("two_layer", worst, 1e-6));
  }
  {
    double off = 0.0, on = 0.0;
    const auto pts = layers.plus.points();
    const std::size_t stride = std::max<std::size_t>(1, pts.size() / 10);
    for (std::size_t k = 0; k < pts.size() && k / stride < 10; k += stride) {
      const auto z = pts[k];
      std::vector<LatticePoint> window;
      for (int dy = -3; dy <= 3; ++dy)
        for (int dx = -3; dx <= 3; ++dx) window.push_back(z + LatticePoint{dx, dy});
      const auto r = ctx.kernel_holomorphicity_check(z, LatticeSet(o.h, std::move(window)));
      off = std::max(off, r.max_off_gamma);
      on = std::max(on, r.max_on_gamma_error);
    }
    const double limit = 1e-6 / (o.h * o.h);
    out.push_back(check("kernel_holomorphic_off_gamma", off, limit));
    out.push_back(check("kernel_gamma_values", on, limit));
  }
  return out;
}

}  // namespace dholo
