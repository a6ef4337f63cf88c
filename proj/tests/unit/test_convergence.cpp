#include <doctest.h>

#include <cmath>
#include <fstream>
#include <random>

#include "dholo/convergence.hpp"
#include "dholo/errors.hpp"

using namespace dholo;

namespace {

StudyOptions memo_options() {
  StudyOptions o;
  o.kernels = [](int radius, double tol) {
    static std::map<std::pair<int, double>, std::shared_ptr<const KernelTable>> memo;
    auto& t = memo[{radius, tol}];
    if (!t) t = std::make_shared<const KernelTable>(build_table(radius, tol));
    return t;
  };
  return o;
}

}  // namespace

TEST_SUITE("convergence") {
  TEST_CASE("fit of exact power laws") {
    const std::vector<double> h{0.2, 0.1, 0.05, 0.025};
    std::vector<double> sq, flat;
    for (double x : h) sq.push_back(x * x), flat.push_back(0.7);
    CHECK(fit_rate(h, sq).slope == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(std::abs(fit_rate(h, flat).slope) < 1e-12);
  }

  TEST_CASE("fit with multiplicative noise") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-0.1, 0.1);
    const std::vector<double> h{0.2, 0.1, 0.05, 0.025};
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<double> e;
      for (double x : h) e.push_back(std::pow(x, 5.0 / 3.0) * (1.0 + u(rng)));
      CHECK(std::abs(fit_rate(h, e).slope - 5.0 / 3.0) <= 0.15);
    }
  }

  TEST_CASE("zero errors are excluded and counted") {
    const auto fit = fit_rate({0.4, 0.2, 0.1, 0.05}, {0.16, 0.0, 0.01, 0.0025});
    CHECK(fit.excluded_zero == 1);
    CHECK(fit.used == 3);
    CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-12));
    CHECK_THROWS_AS(fit_rate({0.2, 0.1, 0.05}, {1.0, 0.0, 0.5}), InsufficientData);
  }

  TEST_CASE("exp(z) study on the unit disk") {
    const auto disk = DomainSpec::disk({0, 0}, 1.0);
    const auto r = run_study(disk, FunctionSpec::exponential(1.0), {0.4, 0.2, 0.1}, 1e-9, memo_options());
    REQUIRE(r.err_value.size() == 3);
    CHECK(r.err_value[2] < r.err_value[1]);
    CHECK(r.err_value[1] < r.err_value[0]);
    CHECK(r.err_d1[2] < r.err_d1[0]);
    REQUIRE(r.rate_value.has_value());
    CHECK(r.rate_value->slope > 1.2);
    for (double e : r.err_value) CHECK(std::isfinite(e));
  }

  TEST_CASE("f = z has rounding-level errors and an exactly zero volume term") {
    auto o = memo_options();
    o.volume_terms = true;
    const auto r = run_study(DomainSpec::disk({0, 0}, 1.0), FunctionSpec::polynomial({0, 1}), {0.25, 0.125, 0.0625},
                             1e-10, o);
    for (double e : r.err_value) CHECK(e < 1e-12);
    for (double v : r.max_volume_term) CHECK(v == 0.0);
  }

  TEST_CASE("evaluation sets are nested") {
    for (double h : {0.2, 0.1}) {
      const auto b = discretize(DomainSpec::disk({0, 0}, 1.0), h);
      const auto i1 = interior(b);
      const auto i2 = interior(i1);
      CHECK(is_subset(i2, i1));
      CHECK(is_subset(i1, b));
    }
  }

  TEST_CASE("perturbed family") {
    const auto disk = DomainSpec::disk({0, 0}, 1.0);
    const auto base = discretize(disk, 0.1);
    const auto a = study_set(disk, 0.1, 5);
    CHECK(is_subset(base, a));
    CHECK(is_subset(a, closure(base)));
    CHECK(a.size() > base.size());
    CHECK(a == study_set(disk, 0.1, 5));
    const auto r = run_study(disk, FunctionSpec::exponential(1.0), {0.4, 0.2, 0.1}, 1e-9, [] {
      auto o = memo_options();
      o.perturb_seed = 5;
      return o;
    }());
    CHECK(r.family == "perturbed");
    CHECK(r.err_value[2] < r.err_value[0]);
  }

  TEST_CASE("bad inputs") {
    const auto disk = DomainSpec::disk({0, 0}, 0.1);
    CHECK_THROWS_WITH_AS(run_study(disk, FunctionSpec::exponential(1.0), {0.5, 0.25, 0.1}, 1e-9, memo_options()),
                         doctest::Contains("h too coarse"), Error);
    CHECK_THROWS_AS(run_study(disk, FunctionSpec::exponential(1.0), {0.1, 0.2}, 1e-9), std::invalid_argument);
    CHECK_THROWS_AS(run_study(disk, FunctionSpec::conjugate_monomial(1), {0.1}, 1e-9), std::invalid_argument);
    CHECK_THROWS_AS(run_study(disk, FunctionSpec::reciprocal(0.0), {0.1}, 1e-9), std::invalid_argument);
  }

  TEST_CASE("report serialization") {
    ConvergenceReport empty;
    CHECK(emit_report(empty, ReportFormat::csv) == "h,err_value,err_d1,err_d2\n");
    const auto r = run_study(DomainSpec::disk({0, 0}, 1.0), FunctionSpec::exponential(1.0), {0.4, 0.2, 0.1}, 1e-9,
                             memo_options());
    const auto text = emit_report(r, ReportFormat::json);
    const auto back = report_from_json(nlohmann::json::parse(text));
    CHECK(back.h_values == r.h_values);
    CHECK(back.err_value == r.err_value);
    CHECK(back.err_d1 == r.err_d1);
    CHECK(back.err_d2 == r.err_d2);
    CHECK(back.rate_value->slope == r.rate_value->slope);
    CHECK(emit_report(back, ReportFormat::json) == text);
  }

  TEST_CASE("golden exp(z) study") {
    std::ifstream in(DHOLO_GOLDEN_DIR "/exp_disk_study.csv");
    REQUIRE(in.good());
    std::string header;
    std::getline(in, header);
    CHECK(header == "h,err_value,err_d1,err_d2");
    const auto r = run_study(DomainSpec::disk({0, 0}, 1.0), FunctionSpec::exponential(1.0), {0.2, 0.1, 0.05}, 1e-9,
                             memo_options());
    for (std::size_t k = 0; k < 3; ++k) {
      double h, e0, e1, e2;
      char comma;
      in >> h >> comma >> e0 >> comma >> e1 >> comma >> e2;
      CHECK(h == r.h_values[k]);
      CHECK(r.err_value[k] == doctest::Approx(e0).epsilon(1e-9));
      CHECK(r.err_d1[k] == doctest::Approx(e1).epsilon(1e-9));
      CHECK(r.err_d2[k] == doctest::Approx(e2).epsilon(1e-9));
    }
  }
}
