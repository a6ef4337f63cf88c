#pragma once

#include <map>
#include <ostream>
#include <vector>

#include "dholo/lattice.hpp"

namespace dholo {

class GridFunction;

enum class Axis { x = 1, y = 2 };
enum class Side { plus, minus };

/// h times the forward/backward differences of the indicator chi_B at a
/// point. Every entry is -1, 0 or 1.
struct IndicatorJumps {
  int forward_x = 0;
  int backward_x = 0;
  int forward_y = 0;
  int backward_y = 0;

  int get(Axis axis, Side side) const;
  /// Number of nonzero entries; positive exactly on the discrete boundary.
  int count() const { return forward_x * forward_x + backward_x * backward_x + forward_y * forward_y + backward_y * backward_y; }
};

IndicatorJumps indicator_jumps(const LatticeSet& b, LatticePoint z);

/// Discrete outer normal (n1+, n1-, n2+, n2-).
struct OuterNormal {
  double n1p = 0.0;
  double n1m = 0.0;
  double n2p = 0.0;
  double n2m = 0.0;

  double get(Axis axis, Side side) const;
  double& get(Axis axis, Side side);
  double norm() const;
};

/// Surface density and outer normal on the discrete boundary of a set,
/// with zero extension everywhere else.
class BoundaryGeometry {
 public:
  explicit BoundaryGeometry(LatticeSet base);

  const LatticeSet& base() const noexcept { return base_; }
  const LatticeSet& boundary() const noexcept { return boundary_; }
  double spacing() const noexcept { return base_.spacing(); }

  double density(LatticePoint z) const;
  OuterNormal normal(LatticePoint z) const;
  /// Values aligned with boundary().points().
  std::span<const double> densities() const noexcept { return density_; }
  std::span<const OuterNormal> normals() const noexcept { return normal_; }

  /// Replaces the normal at the k-th boundary point. Used for fault injection.
  void override_normal(std::size_t k, OuterNormal n) { normal_.at(k) = n; }

 private:
  LatticeSet base_;
  LatticeSet boundary_;
  std::vector<double> density_;
  std::vector<OuterNormal> normal_;
};

std::map<LatticePoint, double> surface_density(const LatticeSet& b);
std::map<LatticePoint, OuterNormal> normal_vector(const LatticeSet& b);

/// Sum over the boundary of g(z) s(z). Throws InsufficientSupport when g is
/// missing at a boundary point.
Complex integrate_surface(const GridFunction& g, const BoundaryGeometry& geo);

struct StokesResidual {
  double flux = 0.0;  ///< max |-d_i^{+-} chi_B - n_i^{+-} s / h^2|
  double norm = 0.0;  ///< max |sum (n_i^{+-})^2 - 4 chi_dB|
};

/// Evaluated over closure(B) plus one more ring; everything vanishes beyond.
StokesResidual stokes_residual(const BoundaryGeometry& geo);
StokesResidual stokes_residual(const LatticeSet& b);

/// Header "ix,iy,s,n1p,n1m,n2p,n2m".
void write_csv(std::ostream& os, const BoundaryGeometry& geo);

}  // namespace dholo
