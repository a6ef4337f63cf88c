#pragma once

#include <vector>

#include "dholo/lattice.hpp"

namespace dholo {

/// Lattice fundamental solution of the symmetric dbar operator at unit
/// spacing,
///   E(x, y) = (1/4 pi^2) int_{[-pi,pi]^2} 2 e^{i(ux + vy)} / (i sin u - sin v) du dv.
/// The v-integral is done by residues, which leaves a one-dimensional
/// integral in u that is smooth on (-pi, 0) and (0, pi); each half is
/// integrated with adaptive 31-point Gauss-Kronrod. Throws QuadratureError
/// when the summed error estimate exceeds quad_tol.
Complex fundamental_solution(int x, int y, double quad_tol);

/// Integrand of the remaining u-integral, so that
/// E(x, y) = (1/2 pi^2) int_{-pi}^{pi} fundamental_solution_integrand(u, x, y) du.
Complex fundamental_solution_integrand(double u, int x, int y);

/// Values of E on the window |x|, |y| <= radius.
class KernelTable {
 public:
  KernelTable(int radius, double quad_tol, std::vector<Complex> values, double achieved_residual);

  int radius() const noexcept { return radius_; }
  double quad_tol() const noexcept { return quad_tol_; }
  double achieved_residual() const noexcept { return achieved_residual_; }
  void set_achieved_residual(double r) { achieved_residual_ = r; }

  bool contains(int x, int y) const noexcept;
  /// E(x, y); throws TableMiss outside the window.
  Complex at(int x, int y) const;
  Complex at(LatticePoint p) const { return at(p.ix, p.iy); }
  /// E^h at lattice indices: (1/h) E(ix, iy).
  Complex scaled(int ix, int iy, double h) const { return at(ix, iy) / h; }

  /// The same table cut down to a smaller window.
  KernelTable restricted(int radius) const;

  /// Row-major values, x fastest, from (-R, -R) to (R, R).
  const std::vector<Complex>& values() const noexcept { return values_; }

 private:
  int radius_;
  double quad_tol_;
  double achieved_residual_;
  std::vector<Complex> values_;
};

/// Tabulates E on |x|, |y| <= R. Only half the window is integrated; the
/// other half is filled as E(-x, -y) = -E(x, y) and E(0, 0) is set to 0.
KernelTable build_table(int radius, double quad_tol);

/// (1/h) E(ix, iy) from a table.
Complex fundamental_scaled(const KernelTable& table, int ix, int iy, double h);

/// max over |x|, |y| <= R - 1 of |dbar^h E^h - delta^h| * h^2.
double residual_check(const KernelTable& table, double h);

struct NormRow {
  int radius;
  double sum_e3;        ///< sum |E|^3
  double sum_dz2;       ///< sum |dz E|^2
  double sum_dzz1;      ///< sum |dz dz E|
  double inc_e3;        ///< increment over the previous row (0 for the first)
  double inc_dz2;
  double inc_dzz1;
};

/// Partial sums over |x|, |y| <= R of the three norms with unit-spacing
/// symmetric differences. The table radius must be at least max(R) + 2.
std::vector<NormRow> norm_estimates(const KernelTable& table, const std::vector<int>& radii);

}  // namespace dholo
