#pragma once

#include <iosfwd>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dholo/domain.hpp"
#include "dholo/function_spec.hpp"
#include "dholo/geometry.hpp"
#include "dholo/lattice.hpp"

namespace dholo {

/// Complex values on an explicit finite support in Z_h^2. Reading outside the
/// support throws; use zero_extend to pad with zeros on purpose.
class GridFunction {
 public:
  explicit GridFunction(double h);

  double spacing() const noexcept { return h_; }
  std::size_t size() const noexcept { return values_.size(); }

  void set(LatticePoint z, Complex v) { values_[z] = v; }
  bool defined_at(LatticePoint z) const { return values_.contains(z); }
  Complex at(LatticePoint z) const;
  /// Sorted support.
  LatticeSet support() const;
  /// Largest |f| over the support.
  double sup_norm() const;

 private:
  double h_;
  std::unordered_map<LatticePoint, Complex, LatticePointHash> values_;
};

/// f on its support, 0 on region \ support(f).
GridFunction zero_extend(const GridFunction& f, const LatticeSet& region);
GridFunction restrict_to(const GridFunction& f, const LatticeSet& region);

/// Writes "ix,iy,re,im" rows in support order.
void write_csv(std::ostream& os, const GridFunction& f);

enum class DiffMode { forward, backward, symmetric };

Complex diff(const GridFunction& f, LatticePoint z, Axis axis, DiffMode mode);
/// (1/2)(d_1 + i d_2) with symmetric differences.
Complex dbar(const GridFunction& f, LatticePoint z);
/// (1/2)(d_1 - i d_2) with symmetric differences.
Complex dz(const GridFunction& f, LatticePoint z);

/// dbar / dz evaluated at every point of `where`.
GridFunction dbar_on(const GridFunction& f, const LatticeSet& where);
GridFunction dz_on(const GridFunction& f, const LatticeSet& where);

bool is_discrete_holomorphic(const GridFunction& f, const LatticeSet& a, double tol);
/// max over A of |dbar f|.
double max_dbar(const GridFunction& f, const LatticeSet& a);

/// sum over A of f(z) h^2.
Complex integrate_volume(const GridFunction& f, const LatticeSet& a);

/// |int_dB f n_i^{side} dS - int_B d_i^{opposite side} f dV|.
double greens_residual(const GridFunction& f, const BoundaryGeometry& geo, Axis axis, Side side);
double greens_residual(const GridFunction& f, const LatticeSet& b, Axis axis, Side side);

/// Max of |dbar f| over B^h = discretize(domain, h) for each h.
std::vector<std::pair<double, double>> dbar_decay_check(const FunctionSpec& f, const DomainSpec& domain,
                                                        const std::vector<double>& h_list);

/// Smooth compactly supported bump (1 - |p - c|^2 / r^2)^4 on the disk |p - c| < r.
struct Bump {
  Complex center;
  double radius;

  double value(Complex p) const;
  /// Exact continuous d/d(conj z).
  Complex dbar(Complex p) const;
  /// Closed form pi r^2 / 5.
  double integral() const;
};

/// Three bumps scaled into the bounding box of the domain; each support is
/// checked to sit strictly inside the domain.
std::vector<Bump> standard_bumps(const DomainSpec& domain);

/// Continuous integral of the bump over the plane by nested Gauss-Kronrod
/// quadrature in polar coordinates.
double bump_integral_quadrature(const Bump& bump);

/// max over bumps of |sum_{z in B_h, z in B} f(z) dbar(phi)(z) h^2|.
double distributional_residual(const GridFunction& f, const LatticeSet& b_h, const DomainSpec& b,
                               const std::vector<Bump>& bumps);

/// |sum_{B^h cap B} phi h^2 - int_B phi dV| for each h.
std::vector<std::pair<double, double>> w_star_check(const DomainSpec& b, const Bump& bump,
                                                    const std::vector<double>& h_list);

}  // namespace dholo
