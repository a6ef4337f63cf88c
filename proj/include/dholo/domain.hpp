#pragma once

#include <complex>
#include <variant>
#include <vector>

#include <json.hpp>

#include "dholo/lattice.hpp"

namespace dholo {

/// A bounded open subset of the plane: a disk, an axis-aligned rectangle, or
/// a union of those. Points on the boundary are not members.
class DomainSpec {
 public:
  struct Disk {
    Complex center;
    double radius;
  };
  struct Rectangle {
    Complex corner_lo;
    Complex corner_hi;
  };
  struct Union {
    std::vector<DomainSpec> members;
  };

  static DomainSpec disk(Complex center, double radius);
  static DomainSpec rectangle(Complex corner_lo, Complex corner_hi);
  static DomainSpec union_of(std::vector<DomainSpec> members);

  const std::variant<Disk, Rectangle, Union>& shape() const noexcept { return shape_; }

  /// Strict membership in the open set.
  bool contains(Complex p) const;
  /// Membership in the closed set.
  bool contains_closure(Complex p) const;

  /// Lower-left and upper-right corners of a bounding box.
  std::pair<Complex, Complex> bounding_box() const;
  /// Total boundary length; for unions the sum over members (an upper bound).
  double perimeter() const;
  double diameter() const;

  /// Points of the boundary spaced at most `step` apart along each member
  /// curve. For unions, member-boundary samples strictly inside another
  /// member are dropped.
  std::vector<Complex> sample_boundary(double step) const;
  /// Points of the closed set: a square grid of pitch `step` plus the
  /// boundary samples.
  std::vector<Complex> sample_closure(double step) const;

  /// Exact Euclidean distance to the closed set (0 inside).
  double distance_to_closure(Complex p) const;
  /// Distance to the boundary curve. Exact for disks and rectangles; for
  /// unions it is the distance to sample_boundary(sampling_step).
  double distance_to_boundary(Complex p, double sampling_step) const;

 private:
  explicit DomainSpec(std::variant<Disk, Rectangle, Union> shape) : shape_(std::move(shape)) {}

  std::variant<Disk, Rectangle, Union> shape_;
};

void to_json(nlohmann::json& j, const DomainSpec& d);
void from_json(const nlohmann::json& j, DomainSpec& d);
DomainSpec parse_domain(const nlohmann::json& j);

/// (B intersect Z_h^2) with its discrete boundary removed: the canonical
/// discretization B^h of an open domain.
LatticeSet discretize(const DomainSpec& spec, double h);

/// Lattice points of spacing h strictly inside the domain.
LatticeSet lattice_points_inside(const DomainSpec& spec, double h);

/// The four max-min distances of discrete-to-continuous set convergence.
struct SetConvergenceMetrics {
  double boundary_to_discrete_boundary;  ///< max over dB of distance to dA
  double discrete_boundary_to_boundary;  ///< max over dA of distance to dB
  double closure_to_set;                 ///< max over closure(B) of distance to A
  double set_to_closure;                 ///< max over A of distance to closure(B)
  double sampling_step;
};

/// The continuous boundary is sampled at step min(h/4, perimeter/4096).
/// Throws std::invalid_argument("empty discrete set") for empty A.
SetConvergenceMetrics set_convergence_metrics(const LatticeSet& a, const DomainSpec& spec);

/// True iff every lattice point (spacing of A) strictly inside U belongs to A.
bool interior_cover_check(const DomainSpec& u, const LatticeSet& a);

}  // namespace dholo
