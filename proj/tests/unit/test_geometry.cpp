#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "dholo/calculus.hpp"
#include "dholo/geometry.hpp"

using namespace dholo;

TEST_SUITE("geometry") {
  TEST_CASE("single point at h = 1") {
    const BoundaryGeometry geo(LatticeSet(1.0, {{0, 0}}));
    CHECK(geo.density({0, 0}) == 1.0);
    const auto n = geo.normal({0, 0});
    CHECK(n.n1p == 1.0);
    CHECK(n.n1m == -1.0);
    CHECK(n.n2p == 1.0);
    CHECK(n.n2m == -1.0);
    const auto outer = geo.normal({1, 0});
    CHECK(outer.n1m == 2.0);
    CHECK(outer.n1p == 0.0);
    CHECK(outer.n2p == 0.0);
    CHECK(outer.n2m == 0.0);
    CHECK(geo.density({1, 0}) == 0.5);
    CHECK(geo.density({5, 5}) == 0.0);
  }

  TEST_CASE("corner of the 3x3 square") {
    std::vector<LatticePoint> pts;
    for (int x = 0; x <= 2; ++x)
      for (int y = 0; y <= 2; ++y) pts.push_back({x, y});
    const BoundaryGeometry geo(LatticeSet(1.0, pts));
    CHECK(geo.density({0, 0}) == doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-15));
  }

  TEST_CASE("density scales with h") {
    CHECK(BoundaryGeometry(LatticeSet(0.5, {{0, 0}})).density({0, 0}) == 0.5);
  }

  TEST_CASE("surface integral of one over a single point") {
    const LatticeSet b(1.0, {{0, 0}});
    const BoundaryGeometry geo(b);
    GridFunction g(1.0);
    for (auto z : geo.boundary()) g.set(z, 1.0);
    CHECK(integrate_surface(g, geo) == Complex(3.0));
    GridFunction zero(1.0);
    for (auto z : geo.boundary()) zero.set(z, 0.0);
    CHECK(integrate_surface(zero, geo) == Complex(0.0));
    CHECK_THROWS(integrate_surface(GridFunction(1.0), geo));
  }

  TEST_CASE("surface integral is linear") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1, 1);
    const BoundaryGeometry geo(discretize(DomainSpec::disk({0, 0}, 1.0), 0.2));
    GridFunction g1(0.2), g2(0.2), mix(0.2);
    const Complex a(0.3, -1.2);
    for (auto z : geo.boundary()) {
      const Complex v1(u(rng), u(rng)), v2(u(rng), u(rng));
      g1.set(z, v1);
      g2.set(z, v2);
      mix.set(z, a * v1 + v2);
    }
    CHECK(std::abs(integrate_surface(mix, geo) - (a * integrate_surface(g1, geo) + integrate_surface(g2, geo))) < 1e-13);
  }

  TEST_CASE("normal has norm two on every boundary point") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> c(-5, 5);
    std::vector<LatticePoint> pts;
    for (int k = 0; k < 50; ++k) pts.push_back({c(rng), c(rng)});
    const BoundaryGeometry geo(LatticeSet(0.25, pts));
    // One ulp of 2: the components 2/sqrt(m) are rounded, so a bit-exact 2
    // is not available for m = 2, 3.
    for (const auto& n : geo.normals()) CHECK(std::abs(n.norm() - 2.0) <= 2 * std::numeric_limits<double>::epsilon());
  }

  TEST_CASE("Stokes equations") {
    CHECK(stokes_residual(LatticeSet(1.0, {{0, 0}})).flux == 0.0);
    CHECK(stokes_residual(LatticeSet(1.0, {{0, 0}})).norm == 0.0);
    const auto empty = stokes_residual(LatticeSet(1.0));
    CHECK(empty.flux == 0.0);
    CHECK(empty.norm == 0.0);
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<int> c(-6, 6);
    std::vector<LatticePoint> pts;
    for (int k = 0; k < 50; ++k) pts.push_back({c(rng), c(rng)});
    const auto r = stokes_residual(LatticeSet(0.25, pts));
    CHECK(r.flux <= 1e-12);
    CHECK(r.norm <= 1e-12);
  }

  TEST_CASE("flipping a normal breaks Stokes") {
    BoundaryGeometry geo(LatticeSet(1.0, {{0, 0}}));
    auto n = geo.normals()[0];
    n.n1p = -n.n1p;
    geo.override_normal(0, n);
    CHECK(stokes_residual(geo).flux > 0.5);
  }

  TEST_CASE("csv output") {
    std::ostringstream os;
    write_csv(os, BoundaryGeometry(LatticeSet(1.0, {{0, 0}})));
    const auto text = os.str();
    CHECK(text.rfind("ix,iy,s,n1p,n1m,n2p,n2m\n", 0) == 0);
    CHECK(text.find("0,0,1,1,-1,1,-1\n") != std::string::npos);
  }

  TEST_CASE("map accessors agree with the geometry") {
    const LatticeSet b(1.0, {{0, 0}, {1, 0}});
    const auto s = surface_density(b);
    const auto n = normal_vector(b);
    const BoundaryGeometry geo(b);
    CHECK(s.size() == geo.boundary().size());
    for (auto z : geo.boundary()) {
      CHECK(s.at(z) == geo.density(z));
      CHECK(n.at(z).n1p == geo.normal(z).n1p);
    }
  }
}
