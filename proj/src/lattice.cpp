#include "dholo/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace dholo {

int chebyshev_distance(LatticePoint a, LatticePoint b) {
  return std::max(std::abs(a.ix - b.ix), std::abs(a.iy - b.iy));
}

std::array<LatticePoint, 5> neighborhood(LatticePoint z) {
  return {z, z + kEastStep, z - kEastStep, z + kNorthStep, z - kNorthStep};
}

LatticeSet::LatticeSet(double h) : h_(h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("lattice spacing must be positive");
}

LatticeSet::LatticeSet(double h, std::vector<LatticePoint> points) : LatticeSet(h) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  points_ = std::move(points);
}

bool LatticeSet::contains(LatticePoint z) const {
  return std::binary_search(points_.begin(), points_.end(), z);
}

std::optional<std::size_t> LatticeSet::index_of(LatticePoint z) const {
  auto it = std::lower_bound(points_.begin(), points_.end(), z);
  if (it == points_.end() || *it != z) return std::nullopt;
  return static_cast<std::size_t>(it - points_.begin());
}

namespace {

void require_same_spacing(const LatticeSet& a, const LatticeSet& b) {
  if (a.spacing() != b.spacing()) throw std::invalid_argument("lattice sets have different spacings");
}

}  // namespace

LatticeSet set_union(const LatticeSet& a, const LatticeSet& b) {
  require_same_spacing(a, b);
  std::vector<LatticePoint> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return LatticeSet(a.spacing(), std::move(out));
}

LatticeSet set_difference(const LatticeSet& a, const LatticeSet& b) {
  require_same_spacing(a, b);
  std::vector<LatticePoint> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return LatticeSet(a.spacing(), std::move(out));
}

LatticeSet set_intersection(const LatticeSet& a, const LatticeSet& b) {
  require_same_spacing(a, b);
  std::vector<LatticePoint> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return LatticeSet(a.spacing(), std::move(out));
}

bool is_subset(const LatticeSet& a, const LatticeSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

LatticeSet filter(const LatticeSet& a, const std::function<bool(LatticePoint)>& keep) {
  std::vector<LatticePoint> out;
  std::copy_if(a.begin(), a.end(), std::back_inserter(out), keep);
  return LatticeSet(a.spacing(), std::move(out));
}

LatticeSet dilate(const LatticeSet& a) {
  std::vector<LatticePoint> out;
  out.reserve(5 * a.size());
  for (auto z : a)
    for (auto q : neighborhood(z)) out.push_back(q);
  return LatticeSet(a.spacing(), std::move(out));
}

LatticeSet boundary(const LatticeSet& a) {
  // Only points of dilate(A) can have a neighborhood meeting A.
  std::vector<LatticePoint> out;
  for (auto z : dilate(a)) {
    const auto nbhd = neighborhood(z);
    const bool meets = std::any_of(nbhd.begin(), nbhd.end(), [&](auto q) { return a.contains(q); });
    const bool leaves = std::any_of(nbhd.begin(), nbhd.end(), [&](auto q) { return !a.contains(q); });
    if (meets && leaves) out.push_back(z);
  }
  return LatticeSet(a.spacing(), std::move(out));
}

LatticeSet interior(const LatticeSet& a) { return set_difference(a, boundary(a)); }

LatticeSet closure(const LatticeSet& a) { return set_union(a, boundary(a)); }

BoundaryLayers boundary_layers(const LatticeSet& a) {
  const auto bd = boundary(a);
  return {set_intersection(bd, a), set_difference(bd, a)};
}

void write_csv(std::ostream& os, const LatticeSet& a) {
  os << "ix,iy\n";
  for (auto z : a) os << z.ix << ',' << z.iy << '\n';
}

NearestPointIndex::NearestPointIndex(const LatticeSet& set) : set_(&set) {
  if (set.empty()) return;
  lo_x_ = hi_x_ = set.points().front().ix;
  lo_y_ = hi_y_ = set.points().front().iy;
  for (auto z : set) {
    lo_x_ = std::min(lo_x_, z.ix);
    hi_x_ = std::max(hi_x_, z.ix);
    lo_y_ = std::min(lo_y_, z.iy);
    hi_y_ = std::max(hi_y_, z.iy);
  }
}

double NearestPointIndex::distance(Complex q) const {
  if (set_->empty()) return std::numeric_limits<double>::infinity();
  const double h = set_->spacing();
  const LatticePoint c{static_cast<int>(std::lround(q.real() / h)),
                       static_cast<int>(std::lround(q.imag() / h))};
  // Every member lies within this Chebyshev radius of c.
  const int reach = std::max({std::abs(c.ix - lo_x_), std::abs(c.ix - hi_x_),
                              std::abs(c.iy - lo_y_), std::abs(c.iy - hi_y_)});
  double best = std::numeric_limits<double>::infinity();
  auto visit = [&](LatticePoint p) {
    if (set_->contains(p)) best = std::min(best, std::abs(q - p.position(h)));
  };
  for (int k = 0; k <= reach; ++k) {
    if (k == 0) {
      visit(c);
    } else {
      for (int t = -k; t <= k; ++t) {
        visit({c.ix + t, c.iy + k});
        visit({c.ix + t, c.iy - k});
      }
      for (int t = -k + 1; t <= k - 1; ++t) {
        visit({c.ix + k, c.iy + t});
        visit({c.ix - k, c.iy + t});
      }
    }
    // Points on ring k+1 or beyond are at least (k + 1/2) h away from q.
    if (best <= (k + 0.5) * h) break;
  }
  return best;
}

}  // namespace dholo
