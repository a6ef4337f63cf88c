#include "dholo/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fmt/format.h>

#include "dholo/errors.hpp"

namespace dholo {

namespace {

constexpr Complex kI{0.0, 1.0};

std::string describe(LatticePoint z) { return fmt::format("({}, {})", z.ix, z.iy); }

LatticePoint step(Axis axis) { return axis == Axis::x ? kEastStep : kNorthStep; }

}  // namespace

GridFunction::GridFunction(double h) : h_(h) {
  if (!(h > 0.0)) throw std::invalid_argument("lattice spacing must be positive");
}

Complex GridFunction::at(LatticePoint z) const {
  const auto it = values_.find(z);
  if (it == values_.end()) throw InsufficientSupport("no value at " + describe(z));
  return it->second;
}

LatticeSet GridFunction::support() const {
  std::vector<LatticePoint> pts;
  pts.reserve(values_.size());
  for (const auto& [z, v] : values_) pts.push_back(z);
  return LatticeSet(h_, std::move(pts));
}

double GridFunction::sup_norm() const {
  double m = 0.0;
  for (const auto& [z, v] : values_) m = std::max(m, std::abs(v));
  return m;
}

GridFunction zero_extend(const GridFunction& f, const LatticeSet& region) {
  GridFunction out = f;
  for (auto z : region)
    if (!out.defined_at(z)) out.set(z, 0.0);
  return out;
}

GridFunction restrict_to(const GridFunction& f, const LatticeSet& region) {
  GridFunction out(f.spacing());
  for (auto z : region) out.set(z, f.at(z));
  return out;
}

void write_csv(std::ostream& os, const GridFunction& f) {
  os << "ix,iy,re,im\n";
  for (auto z : f.support()) {
    const auto v = f.at(z);
    os << fmt::format("{},{},{:.17g},{:.17g}\n", z.ix, z.iy, v.real(), v.imag());
  }
}

Complex diff(const GridFunction& f, LatticePoint z, Axis axis, DiffMode mode) {
  const double h = f.spacing();
  const auto e = step(axis);
  switch (mode) {
    case DiffMode::forward:
      return (f.at(z + e) - f.at(z)) / h;
    case DiffMode::backward:
      return (f.at(z) - f.at(z - e)) / h;
    case DiffMode::symmetric:
      return 0.5 * (f.at(z + e) - f.at(z - e)) / h;
  }
  throw std::logic_error("unreachable difference mode");
}

Complex dbar(const GridFunction& f, LatticePoint z) {
  return 0.5 * (diff(f, z, Axis::x, DiffMode::symmetric) + kI * diff(f, z, Axis::y, DiffMode::symmetric));
}

Complex dz(const GridFunction& f, LatticePoint z) {
  return 0.5 * (diff(f, z, Axis::x, DiffMode::symmetric) - kI * diff(f, z, Axis::y, DiffMode::symmetric));
}

GridFunction dbar_on(const GridFunction& f, const LatticeSet& where) {
  GridFunction out(f.spacing());
  for (auto z : where) out.set(z, dbar(f, z));
  return out;
}

GridFunction dz_on(const GridFunction& f, const LatticeSet& where) {
  GridFunction out(f.spacing());
  for (auto z : where) out.set(z, dz(f, z));
  return out;
}

double max_dbar(const GridFunction& f, const LatticeSet& a) {
  double m = 0.0;
  for (auto z : a) m = std::max(m, std::abs(dbar(f, z)));
  return m;
}

bool is_discrete_holomorphic(const GridFunction& f, const LatticeSet& a, double tol) {
  return max_dbar(f, a) <= tol;
}

Complex integrate_volume(const GridFunction& f, const LatticeSet& a) {
  const double h2 = f.spacing() * f.spacing();
  Complex total = 0.0;
  for (auto z : a) total += f.at(z);
  return total * h2;
}

double greens_residual(const GridFunction& f, const BoundaryGeometry& geo, Axis axis, Side side) {
  const double h = geo.spacing();
  Complex surface = 0.0;
  const auto pts = geo.boundary().points();
  for (std::size_t k = 0; k < pts.size(); ++k)
    surface += f.at(pts[k]) * geo.normals()[k].get(axis, side) * geo.densities()[k];

  const auto opposite = side == Side::plus ? DiffMode::backward : DiffMode::forward;
  Complex volume = 0.0;
  for (auto z : geo.base()) volume += diff(f, z, axis, opposite);
  volume *= h * h;
  return std::abs(surface - volume);
}

double greens_residual(const GridFunction& f, const LatticeSet& b, Axis axis, Side side) {
  return greens_residual(f, BoundaryGeometry(b), axis, side);
}

std::vector<std::pair<double, double>> dbar_decay_check(const FunctionSpec& f, const DomainSpec& domain,
                                                        const std::vector<double>& h_list) {
  f.require_regular_on(domain);
  std::vector<std::pair<double, double>> out;
  for (double h : h_list) {
    const auto bh = discretize(domain, h);
    const auto samples = sample(f, closure(bh));
    out.emplace_back(h, max_dbar(samples, bh));
  }
  return out;
}

double Bump::value(Complex p) const {
  const double t = std::norm(p - center) / (radius * radius);
  return t < 1.0 ? std::pow(1.0 - t, 4) : 0.0;
}

Complex Bump::dbar(Complex p) const {
  // d/d(conj w) |w|^2 = w.
  const Complex w = p - center;
  const double t = std::norm(w) / (radius * radius);
  return t < 1.0 ? -4.0 * std::pow(1.0 - t, 3) * w / (radius * radius) : Complex{};
}

double Bump::integral() const { return std::numbers::pi * radius * radius / 5.0; }

std::vector<Bump> standard_bumps(const DomainSpec& domain) {
  const auto [lo, hi] = domain.bounding_box();
  const Complex mid = 0.5 * (lo + hi);
  const double scale = 0.5 * std::min(hi.real() - lo.real(), hi.imag() - lo.imag());
  std::vector<Bump> bumps = {{mid, 0.5 * scale},
                             {mid + scale * Complex(0.3, 0.2), 0.4 * scale},
                             {mid + scale * Complex(-0.25, 0.35), 0.3 * scale}};
  for (const auto& b : bumps) {
    if (!domain.contains(b.center)) throw std::invalid_argument("standard bump center falls outside the domain");
    for (auto q : DomainSpec::disk(b.center, b.radius).sample_boundary(b.radius / 64.0))
      if (!domain.contains(q)) throw std::invalid_argument("standard bump support leaves the domain");
  }
  return bumps;
}

double bump_integral_quadrature(const Bump& bump) {
  using boost::math::quadrature::gauss_kronrod;
  auto radial = [&](double r) {
    auto angular = [&](double theta) { return bump.value(bump.center + std::polar(r, theta)); };
    return r * gauss_kronrod<double, 31>::integrate(angular, 0.0, 2.0 * std::numbers::pi, 10, 1e-13);
  };
  return gauss_kronrod<double, 31>::integrate(radial, 0.0, bump.radius, 15, 1e-13);
}

double distributional_residual(const GridFunction& f, const LatticeSet& b_h, const DomainSpec& b,
                               const std::vector<Bump>& bumps) {
  const double h = f.spacing();
  double worst = 0.0;
  for (const auto& bump : bumps) {
    Complex total = 0.0;
    for (auto z : b_h) {
      const Complex p = z.position(h);
      if (!b.contains(p)) continue;
      const Complex d = bump.dbar(p);
      if (d != Complex{}) total += f.at(z) * d;
    }
    worst = std::max(worst, std::abs(total * h * h));
  }
  return worst;
}

std::vector<std::pair<double, double>> w_star_check(const DomainSpec& b, const Bump& bump,
                                                    const std::vector<double>& h_list) {
  const double exact = bump_integral_quadrature(bump);
  std::vector<std::pair<double, double>> out;
  for (double h : h_list) {
    double total = 0.0;
    for (auto z : discretize(b, h)) {
      const Complex p = z.position(h);
      if (b.contains(p)) total += bump.value(p);
    }
    out.emplace_back(h, std::abs(total * h * h - exact));
  }
  return out;
}

}  // namespace dholo
