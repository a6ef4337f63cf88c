#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "dholo/calculus.hpp"
#include "dholo/domain.hpp"
#include "dholo/lattice.hpp"

namespace dholo {

/// Random finite set of 1..max_points points in the index box [-12, 12]^2.
LatticeSet random_lattice_set(std::mt19937_64& rng, double h, std::size_t max_points);
/// Independent uniform values in [-1, 1] + i[-1, 1] on every point.
GridFunction random_grid_function(std::mt19937_64& rng, const LatticeSet& support);

struct CheckResult {
  std::string name;
  double value = 0.0;
  double limit = 0.0;
  bool pass = false;
};

void to_json(nlohmann::json& j, const CheckResult& c);

enum class Fault { none, flip_normal };

struct VerifyOptions {
  DomainSpec domain = DomainSpec::disk({0.0, 0.0}, 1.0);
  double h = 0.1;
  double quad_tol = 1e-8;
  std::uint64_t seed = 42;
  std::size_t random_sets = 100;
  Fault fault = Fault::none;
};

/// The exact-identity suite: Green's formula, Stokes equations, norm of the
/// normal, kernel residual, Cauchy-Pompeiu, two-layer dichotomy and kernel
/// holomorphicity. Throws std::invalid_argument when the domain has an
/// empty discretization.
std::vector<CheckResult> run_verify_suite(const VerifyOptions& options);

/// Largest Green's formula residual over the four (axis, side) pairs,
/// relative to max|f| * |B| h^2.
double relative_greens_residual(const GridFunction& f, const BoundaryGeometry& geo);

/// Cauchy-Pompeiu tolerance
///   c * max(achieved_residual, eps) * max|f| * |closure(B)| * (1 + 1/h)
/// with c = 64: every term of either sum carries one factor of the kernel
/// error or of rounding, and the volume sum sees dbar f of size max|f| / h.
double cauchy_pompeiu_budget(double achieved_residual, double f_sup, std::size_t closure_size, double h);

}  // namespace dholo
