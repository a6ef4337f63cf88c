#pragma once

#include <array>
#include <complex>
#include <compare>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace dholo {

using Complex = std::complex<double>;

/// A point of the scaled lattice in index space; its physical position is
/// (ix * h, iy * h) for the spacing h of the owning set.
struct LatticePoint {
  int ix = 0;
  int iy = 0;

  friend constexpr auto operator<=>(const LatticePoint&, const LatticePoint&) = default;

  constexpr LatticePoint operator+(LatticePoint o) const { return {ix + o.ix, iy + o.iy}; }
  constexpr LatticePoint operator-(LatticePoint o) const { return {ix - o.ix, iy - o.iy}; }
  constexpr LatticePoint operator-() const { return {-ix, -iy}; }

  Complex position(double h) const { return {ix * h, iy * h}; }
};

struct LatticePointHash {
  std::size_t operator()(LatticePoint p) const noexcept {
    const auto ux = static_cast<std::size_t>(static_cast<unsigned>(p.ix));
    const auto uy = static_cast<std::size_t>(static_cast<unsigned>(p.iy));
    return ux * 0x9E3779B97F4A7C15ull ^ (uy + 0x632BE59BD9B4E019ull + (ux << 6) + (ux >> 2));
  }
};

inline constexpr LatticePoint kEastStep{1, 0};
inline constexpr LatticePoint kNorthStep{0, 1};

/// Chebyshev (max-norm) distance in index space.
int chebyshev_distance(LatticePoint a, LatticePoint b);

/// N(z) = {z, z +- e_x, z +- e_y}, always five points, z first.
std::array<LatticePoint, 5> neighborhood(LatticePoint z);

/// Finite subset of Z_h^2. Points are kept sorted and unique so iteration
/// order (and therefore every reduction over a set) is deterministic.
class LatticeSet {
 public:
  explicit LatticeSet(double h);
  LatticeSet(double h, std::vector<LatticePoint> points);

  double spacing() const noexcept { return h_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  std::span<const LatticePoint> points() const noexcept { return points_; }
  auto begin() const noexcept { return points_.begin(); }
  auto end() const noexcept { return points_.end(); }

  bool contains(LatticePoint z) const;
  /// Position of z in points(), if present.
  std::optional<std::size_t> index_of(LatticePoint z) const;

  friend bool operator==(const LatticeSet&, const LatticeSet&) = default;

 private:
  double h_;
  std::vector<LatticePoint> points_;
};

LatticeSet set_union(const LatticeSet& a, const LatticeSet& b);
LatticeSet set_difference(const LatticeSet& a, const LatticeSet& b);
LatticeSet set_intersection(const LatticeSet& a, const LatticeSet& b);
bool is_subset(const LatticeSet& a, const LatticeSet& b);
LatticeSet filter(const LatticeSet& a, const std::function<bool(LatticePoint)>& keep);

/// Discrete boundary: every z whose neighborhood meets both A and its
/// complement. Contains points of A (inner layer) and outside A (outer layer).
LatticeSet boundary(const LatticeSet& a);
LatticeSet interior(const LatticeSet& a);
LatticeSet closure(const LatticeSet& a);
/// Union of N(z) over z in A.
LatticeSet dilate(const LatticeSet& a);

struct BoundaryLayers {
  LatticeSet plus;   ///< boundary points inside A
  LatticeSet minus;  ///< boundary points outside A
};
BoundaryLayers boundary_layers(const LatticeSet& a);

/// Writes a header line "ix,iy" followed by one row per point.
void write_csv(std::ostream& os, const LatticeSet& a);

/// Nearest-point queries against a lattice set, by ring search in index space.
class NearestPointIndex {
 public:
  explicit NearestPointIndex(const LatticeSet& set);
  /// Euclidean distance from q to the closest member; +inf for an empty set.
  double distance(Complex q) const;

 private:
  const LatticeSet* set_;
  int lo_x_ = 0, hi_x_ = 0, lo_y_ = 0, hi_y_ = 0;
};

}  // namespace dholo
