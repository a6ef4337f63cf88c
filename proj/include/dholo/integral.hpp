#pragma once

#include <memory>
#include <vector>

#include "dholo/calculus.hpp"
#include "dholo/geometry.hpp"
#include "dholo/kernel.hpp"
#include "dholo/lattice.hpp"

namespace dholo {

struct CauchyPompeiuTerms {
  Complex boundary_term;
  Complex volume_term;
};

struct TwoLayerErrors {
  double max_err_plus = 0.0;   ///< max over inner layer of |f^h - f|
  double max_err_minus = 0.0;  ///< max over outer layer of |f^h|
};

struct HolomorphicityReport {
  double max_off_gamma = 0.0;       ///< max |dbar_zeta K(z, zeta)| for zeta outside N(z)
  double max_on_gamma_error = 0.0;  ///< max deviation from the expected values on N(z)
  std::size_t checked = 0;
};

/// Smallest table radius for which every kernel evaluation between the
/// boundary of `b` and points of `targets` is tabulated.
int required_table_radius(const LatticeSet& b, const LatticeSet& targets);

/// Discrete Bochner-Martinelli machinery for a fixed finite set B and a
/// tabulated fundamental solution. Immutable once built.
class BMKernelContext {
 public:
  BMKernelContext(LatticeSet b, std::shared_ptr<const KernelTable> table);

  const LatticeSet& set() const noexcept { return geo_.base(); }
  const BoundaryGeometry& geometry() const noexcept { return geo_; }
  const KernelTable& table() const noexcept { return *table_; }
  double spacing() const noexcept { return geo_.spacing(); }

  /// E^h at the index difference p.
  Complex fundamental(LatticePoint p) const { return table_->scaled(p.ix, p.iy, spacing()); }

  /// K^h(z, zeta) = A(z - zeta) n1-(z) + B(z - zeta) n1+(z)
  ///             + i C(z - zeta) n2-(z) + i D(z - zeta) n2+(z),
  /// with A(w) = -E^h(h - w)/4, B(w) = -E^h(-h - w)/4,
  ///      C(w) = -E^h(ih - w)/4, D(w) = -E^h(-ih - w)/4.
  /// Vanishes for z off the boundary.
  Complex kernel(LatticePoint z, LatticePoint zeta) const;

  /// The two terms of chi_B(zeta) f(zeta) = int_dB K f dS + int_B E^h(zeta - .) dbar f dV.
  /// f must be defined on closure(B).
  CauchyPompeiuTerms cauchy_pompeiu_split(const GridFunction& f, LatticePoint zeta) const;

  /// f^h(zeta) = int_dB K^h(z, zeta) f(z) dS(z); f must be defined on dB.
  Complex boundary_reconstruct(const GridFunction& f_boundary, LatticePoint zeta) const;
  GridFunction boundary_reconstruct(const GridFunction& f_boundary, const LatticeSet& targets) const;

  TwoLayerErrors two_layer_check(const GridFunction& f) const;

  /// dz (order 1) or dz^2 (order 2) of f^h at zeta. Order 1 needs zeta in
  /// interior(B), order 2 needs zeta in interior(interior(B)); otherwise
  /// throws StencilLeavesDomain.
  Complex derivative_reconstruct(const GridFunction& f_boundary, LatticePoint zeta, int order) const;

  /// Expected dbar_zeta K^h(z, zeta): -n1+/(4h^2) at z + h, -n1-/(4h^2) at
  /// z - h, -i n2+/(4h^2) at z + ih, -i n2-/(4h^2) at z - ih, 0 elsewhere.
  Complex expected_kernel_dbar(LatticePoint z, LatticePoint zeta) const;
  /// Symmetric-difference dbar in zeta of K^h(z, .).
  Complex kernel_dbar(LatticePoint z, LatticePoint zeta) const;
  HolomorphicityReport kernel_holomorphicity_check(LatticePoint z, const LatticeSet& window) const;

 private:
  BoundaryGeometry geo_;
  std::shared_ptr<const KernelTable> table_;
};

}  // namespace dholo
