#include <doctest.h>

#include <random>
#include <set>
#include <sstream>

#include "dholo/lattice.hpp"
#include "oracles.hpp"

using namespace dholo;

namespace {

LatticeSet square3() {
  std::vector<LatticePoint> pts;
  for (int x = 0; x <= 2; ++x)
    for (int y = 0; y <= 2; ++y) pts.push_back({x, y});
  return LatticeSet(1.0, pts);
}

std::set<oracle::Point> as_pairs(const LatticeSet& a) {
  std::set<oracle::Point> out;
  for (auto z : a) out.insert({z.ix, z.iy});
  return out;
}

}  // namespace

TEST_SUITE("lattice") {
  TEST_CASE("neighborhood of the origin and a translate") {
    const auto n = neighborhood({0, 0});
    const std::set<LatticePoint> got(n.begin(), n.end());
    CHECK(got == std::set<LatticePoint>{{0, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}});
    const auto m = neighborhood({3, -2});
    for (std::size_t k = 0; k < 5; ++k) CHECK(m[k] == n[k] + LatticePoint{3, -2});
    CHECK(n[0] == LatticePoint{0, 0});
  }

  TEST_CASE("boundary of a single point") {
    const LatticeSet a(1.0, {{0, 0}});
    const auto b = boundary(a);
    CHECK(b.size() == 5);
    CHECK(as_pairs(b) == std::set<oracle::Point>{{0, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}});
    const auto layers = boundary_layers(a);
    CHECK(layers.plus.size() == 1);
    CHECK(layers.minus.size() == 4);
    CHECK(interior(a).empty());
    CHECK(closure(a) == b);
  }

  TEST_CASE("boundary of the 3x3 square") {
    const auto a = square3();
    const auto b = boundary(a);
    CHECK(b.size() == 20);
    CHECK_FALSE(b.contains({1, 1}));
    const auto layers = boundary_layers(a);
    CHECK(layers.plus.size() == 8);
    CHECK(layers.minus.size() == 12);
    CHECK(interior(a) == LatticeSet(1.0, {{1, 1}}));
  }

  TEST_CASE("empty set has empty boundary") {
    const LatticeSet a(0.5);
    CHECK(boundary(a).empty());
    CHECK(boundary_layers(a).plus.empty());
    CHECK(boundary_layers(a).minus.empty());
  }

  TEST_CASE("boundary matches brute-force enumeration on random sets") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> c(-6, 6), n(0, 60);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<LatticePoint> pts;
      for (int k = n(rng); k > 0; --k) pts.push_back({c(rng), c(rng)});
      const LatticeSet a(0.25, pts);
      CHECK(as_pairs(boundary(a)) == oracle::boundary(as_pairs(a)));
      CHECK(is_subset(interior(a), a));
      CHECK(is_subset(a, closure(a)));
    }
  }

  TEST_CASE("set operations reject mixed spacings") {
    CHECK_THROWS_AS(set_union(LatticeSet(1.0), LatticeSet(0.5)), std::invalid_argument);
    CHECK_THROWS_AS(LatticeSet(0.0), std::invalid_argument);
  }

  TEST_CASE("points are sorted and unique") {
    const LatticeSet a(1.0, {{2, 0}, {0, 0}, {2, 0}, {-1, 3}});
    CHECK(a.size() == 3);
    CHECK(std::is_sorted(a.begin(), a.end()));
    CHECK(a.index_of({2, 0}).has_value());
    CHECK_FALSE(a.index_of({5, 5}).has_value());
  }

  TEST_CASE("csv output") {
    std::ostringstream os;
    write_csv(os, LatticeSet(1.0, {{1, -2}}));
    CHECK(os.str() == "ix,iy\n1,-2\n");
  }

  TEST_CASE("nearest point distance agrees with a linear scan") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> c(-20, 20);
    std::uniform_real_distribution<double> q(-8.0, 8.0);
    std::vector<LatticePoint> pts;
    for (int k = 0; k < 40; ++k) pts.push_back({c(rng), c(rng)});
    const LatticeSet a(0.3, pts);
    const NearestPointIndex index(a);
    for (int k = 0; k < 200; ++k) {
      const Complex p(q(rng), q(rng));
      double best = 1e300;
      for (auto z : a) best = std::min(best, std::abs(z.position(0.3) - p));
      CHECK(index.distance(p) == doctest::Approx(best).epsilon(1e-14));
    }
  }
}
