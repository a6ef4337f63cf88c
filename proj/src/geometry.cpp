#include "dholo/geometry.hpp"

#include <cmath>

#include <fmt/format.h>

#include "dholo/calculus.hpp"
#include "dholo/errors.hpp"

namespace dholo {

int IndicatorJumps::get(Axis axis, Side side) const {
  if (axis == Axis::x) return side == Side::plus ? forward_x : backward_x;
  return side == Side::plus ? forward_y : backward_y;
}

IndicatorJumps indicator_jumps(const LatticeSet& b, LatticePoint z) {
  auto chi = [&](LatticePoint p) { return b.contains(p) ? 1 : 0; };
  const int c = chi(z);
  return {chi(z + kEastStep) - c, c - chi(z - kEastStep), chi(z + kNorthStep) - c, c - chi(z - kNorthStep)};
}

double OuterNormal::get(Axis axis, Side side) const {
  if (axis == Axis::x) return side == Side::plus ? n1p : n1m;
  return side == Side::plus ? n2p : n2m;
}

double& OuterNormal::get(Axis axis, Side side) {
  if (axis == Axis::x) return side == Side::plus ? n1p : n1m;
  return side == Side::plus ? n2p : n2m;
}

double OuterNormal::norm() const { return std::sqrt(n1p * n1p + n1m * n1m + n2p * n2p + n2m * n2m); }

BoundaryGeometry::BoundaryGeometry(LatticeSet base) : base_(std::move(base)), boundary_(dholo::boundary(base_)) {
  const double h = base_.spacing();
  density_.reserve(boundary_.size());
  normal_.reserve(boundary_.size());
  for (auto z : boundary_) {
    // Work with the integer jumps k = h * d chi and scale once:
    // s = (h^2 / 2) sqrt(m) / h, n = -2 k / sqrt(m), with m = sum k^2.
    const auto k = indicator_jumps(base_, z);
    const double root = std::sqrt(static_cast<double>(k.count()));
    density_.push_back(0.5 * h * root);
    normal_.push_back({-2.0 * k.forward_x / root, -2.0 * k.backward_x / root, -2.0 * k.forward_y / root,
                       -2.0 * k.backward_y / root});
  }
}

double BoundaryGeometry::density(LatticePoint z) const {
  const auto k = boundary_.index_of(z);
  return k ? density_[*k] : 0.0;
}

OuterNormal BoundaryGeometry::normal(LatticePoint z) const {
  const auto k = boundary_.index_of(z);
  return k ? normal_[*k] : OuterNormal{};
}

std::map<LatticePoint, double> surface_density(const LatticeSet& b) {
  const BoundaryGeometry geo(b);
  std::map<LatticePoint, double> out;
  for (std::size_t k = 0; k < geo.boundary().size(); ++k) out.emplace(geo.boundary().points()[k], geo.densities()[k]);
  return out;
}

std::map<LatticePoint, OuterNormal> normal_vector(const LatticeSet& b) {
  const BoundaryGeometry geo(b);
  std::map<LatticePoint, OuterNormal> out;
  for (std::size_t k = 0; k < geo.boundary().size(); ++k) out.emplace(geo.boundary().points()[k], geo.normals()[k]);
  return out;
}

Complex integrate_surface(const GridFunction& g, const BoundaryGeometry& geo) {
  Complex total = 0.0;
  const auto pts = geo.boundary().points();
  for (std::size_t k = 0; k < pts.size(); ++k) total += g.at(pts[k]) * geo.densities()[k];
  return total;
}

StokesResidual stokes_residual(const BoundaryGeometry& geo) {
  const double h = geo.spacing();
  const auto& b = geo.base();
  StokesResidual r;
  for (auto z : dilate(closure(b))) {
    const auto k = indicator_jumps(b, z);
    const auto n = geo.normal(z);
    const double s = geo.density(z);
    for (auto axis : {Axis::x, Axis::y})
      for (auto side : {Side::plus, Side::minus}) {
        const double lhs = -static_cast<double>(k.get(axis, side)) / h;
        const double rhs = n.get(axis, side) * s / (h * h);
        r.flux = std::max(r.flux, std::abs(lhs - rhs));
      }
    const double sq = n.n1p * n.n1p + n.n1m * n.n1m + n.n2p * n.n2p + n.n2m * n.n2m;
    const double chi_boundary = geo.boundary().contains(z) ? 1.0 : 0.0;
    r.norm = std::max(r.norm, std::abs(sq - 4.0 * chi_boundary));
  }
  return r;
}

StokesResidual stokes_residual(const LatticeSet& b) { return stokes_residual(BoundaryGeometry(b)); }

void write_csv(std::ostream& os, const BoundaryGeometry& geo) {
  os << "ix,iy,s,n1p,n1m,n2p,n2m\n";
  const auto pts = geo.boundary().points();
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const auto& n = geo.normals()[k];
    os << fmt::format("{},{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", pts[k].ix, pts[k].iy, geo.densities()[k],
                      n.n1p, n.n1m, n.n2p, n.n2m);
  }
}

}  // namespace dholo
