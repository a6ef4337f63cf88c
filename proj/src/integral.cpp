#include "dholo/integral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "dholo/errors.hpp"

namespace dholo {

namespace {

constexpr Complex kI{0.0, 1.0};

std::string describe(LatticePoint z) { return fmt::format("({}, {})", z.ix, z.iy); }

}  // namespace

int required_table_radius(const LatticeSet& b, const LatticeSet& targets) {
  const auto bd = boundary(b);
  int reach = 0;
  // Boundary kernel needs |z - zeta| + 1, the volume term needs B - zeta.
  for (const auto* src : {&bd, &b}) {
    if (src->empty() || targets.empty()) continue;
    int lo_x = src->begin()->ix, hi_x = lo_x, lo_y = src->begin()->iy, hi_y = lo_y;
    for (auto z : *src) {
      lo_x = std::min(lo_x, z.ix), hi_x = std::max(hi_x, z.ix);
      lo_y = std::min(lo_y, z.iy), hi_y = std::max(hi_y, z.iy);
    }
    for (auto t : targets) {
      reach = std::max({reach, std::abs(t.ix - lo_x), std::abs(t.ix - hi_x), std::abs(t.iy - lo_y),
                        std::abs(t.iy - hi_y)});
    }
  }
  return reach + 1;
}

BMKernelContext::BMKernelContext(LatticeSet b, std::shared_ptr<const KernelTable> table)
    : geo_(std::move(b)), table_(std::move(table)) {
  if (!table_) throw std::invalid_argument("kernel table is required");
}

Complex BMKernelContext::kernel(LatticePoint z, LatticePoint zeta) const {
  const auto k = geo_.boundary().index_of(z);
  if (!k) return 0.0;
  const auto& n = geo_.normals()[*k];
  const LatticePoint w = z - zeta;
  const Complex a = -0.25 * fundamental(LatticePoint{1, 0} - w);
  const Complex b = -0.25 * fundamental(LatticePoint{-1, 0} - w);
  const Complex c = -0.25 * fundamental(LatticePoint{0, 1} - w);
  const Complex d = -0.25 * fundamental(LatticePoint{0, -1} - w);
  return a * n.n1m + b * n.n1p + kI * c * n.n2m + kI * d * n.n2p;
}

CauchyPompeiuTerms BMKernelContext::cauchy_pompeiu_split(const GridFunction& f, LatticePoint zeta) const {
  const double h = spacing();
  CauchyPompeiuTerms out{boundary_reconstruct(f, zeta), 0.0};
  for (auto z : set()) {
    const Complex d = dbar(f, z);
    // Skip exact zeros so holomorphic data gives an exactly zero term.
    if (d != Complex{}) out.volume_term += fundamental(zeta - z) * d;
  }
  out.volume_term *= h * h;
  return out;
}

Complex BMKernelContext::boundary_reconstruct(const GridFunction& f_boundary, LatticePoint zeta) const {
  Complex total = 0.0;
  const auto pts = geo_.boundary().points();
  for (std::size_t k = 0; k < pts.size(); ++k) total += kernel(pts[k], zeta) * f_boundary.at(pts[k]) * geo_.densities()[k];
  return total;
}

GridFunction BMKernelContext::boundary_reconstruct(const GridFunction& f_boundary, const LatticeSet& targets) const {
  const auto pts = geo_.boundary().points();
  // Per boundary point: f s times each normal component, with the -1/4.
  struct Weights {
    LatticePoint z;
    Complex w1m, w1p, w2m, w2p;
  };
  std::vector<Weights> weights;
  weights.reserve(pts.size());
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const Complex fs = -0.25 * f_boundary.at(pts[k]) * geo_.densities()[k];
    const auto& n = geo_.normals()[k];
    weights.push_back({pts[k], fs * n.n1m, fs * n.n1p, kI * fs * n.n2m, kI * fs * n.n2p});
  }
  GridFunction out(spacing());
  for (auto zeta : targets) {
    Complex total = 0.0;
    for (const auto& wt : weights) {
      const LatticePoint w = wt.z - zeta;
      total += wt.w1m * fundamental(LatticePoint{1, 0} - w) + wt.w1p * fundamental(LatticePoint{-1, 0} - w) +
               wt.w2m * fundamental(LatticePoint{0, 1} - w) + wt.w2p * fundamental(LatticePoint{0, -1} - w);
    }
    out.set(zeta, total);
  }
  return out;
}

TwoLayerErrors BMKernelContext::two_layer_check(const GridFunction& f) const {
  const auto layers = boundary_layers(set());
  TwoLayerErrors out;
  const auto plus = boundary_reconstruct(f, layers.plus);
  for (auto z : layers.plus) out.max_err_plus = std::max(out.max_err_plus, std::abs(plus.at(z) - f.at(z)));
  const auto minus = boundary_reconstruct(f, layers.minus);
  for (auto z : layers.minus) out.max_err_minus = std::max(out.max_err_minus, std::abs(minus.at(z)));
  return out;
}

Complex BMKernelContext::derivative_reconstruct(const GridFunction& f_boundary, LatticePoint zeta, int order) const {
  if (order != 1 && order != 2) throw std::invalid_argument("derivative order must be 1 or 2");
  const auto inner = interior(set());
  const auto& admissible = order == 1 ? inner : interior(inner);
  if (!admissible.contains(zeta))
    throw StencilLeavesDomain(fmt::format("order {} derivative at {}", order, describe(zeta)));
  std::vector<LatticePoint> pts;
  for (auto p : neighborhood(zeta)) {
    if (order == 1) {
      pts.push_back(p);
    } else {
      for (auto q : neighborhood(p)) pts.push_back(q);
    }
  }
  const auto fh = boundary_reconstruct(f_boundary, LatticeSet(spacing(), std::move(pts)));
  if (order == 1) return dz(fh, zeta);
  GridFunction d1(spacing());
  for (auto p : neighborhood(zeta))
    if (p != zeta) d1.set(p, dz(fh, p));
  return dz(d1, zeta);
}

Complex BMKernelContext::expected_kernel_dbar(LatticePoint z, LatticePoint zeta) const {
  const auto n = geo_.normal(z);
  const double c = -0.25 / (spacing() * spacing());
  const LatticePoint w = zeta - z;
  if (w == kEastStep) return c * n.n1p;
  if (w == -kEastStep) return c * n.n1m;
  if (w == kNorthStep) return c * kI * n.n2p;
  if (w == -kNorthStep) return c * kI * n.n2m;
  return 0.0;
}

Complex BMKernelContext::kernel_dbar(LatticePoint z, LatticePoint zeta) const {
  const double h = spacing();
  return 0.25 / h *
         ((kernel(z, zeta + kEastStep) - kernel(z, zeta - kEastStep)) +
          kI * (kernel(z, zeta + kNorthStep) - kernel(z, zeta - kNorthStep)));
}

HolomorphicityReport BMKernelContext::kernel_holomorphicity_check(LatticePoint z, const LatticeSet& window) const {
  HolomorphicityReport out;
  for (auto zeta : window) {
    const Complex got = kernel_dbar(z, zeta);
    const auto w = zeta - z;
    const bool on_gamma = std::abs(w.ix) + std::abs(w.iy) <= 1;
    if (on_gamma)
      out.max_on_gamma_error = std::max(out.max_on_gamma_error, std::abs(got - expected_kernel_dbar(z, zeta)));
    else
      out.max_off_gamma = std::max(out.max_off_gamma, std::abs(got));
    ++out.checked;
  }
  return out;
}

}  // namespace dholo
