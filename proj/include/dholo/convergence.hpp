#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dholo/domain.hpp"
#include "dholo/function_spec.hpp"
#include "dholo/kernel.hpp"

namespace dholo {

struct RateFit {
  double slope = 0.0;
  std::size_t used = 0;           ///< points entering the fit
  std::size_t excluded_zero = 0;  ///< points dropped because err == 0
};

/// Least-squares slope of log(err) against log(h). Zero errors are dropped
/// and counted; fewer than three remaining points throw InsufficientData.
RateFit fit_rate(const std::vector<double>& h, const std::vector<double>& err);

struct ConvergenceReport {
  std::vector<double> h_values;
  std::vector<double> err_value;  ///< max over B^h cap B of |f - f^h|
  std::vector<double> err_d1;     ///< max over interior(B^h) cap B of |f' - dz f^h|
  std::vector<double> err_d2;     ///< max over interior(interior(B^h)) cap B of |f'' - dz^2 f^h|
  std::vector<double> max_volume_term;  ///< max |volume term| over B^h cap B; 0 for dbar-exact data
  std::optional<RateFit> rate_value, rate_d1, rate_d2;
  nlohmann::json domain;
  nlohmann::json function;
  double quad_tol = 0.0;
  std::string family = "canonical";
  std::optional<std::uint64_t> seed;
};

using KernelProvider = std::function<std::shared_ptr<const KernelTable>(int radius, double quad_tol)>;

struct StudyOptions {
  /// Defaults to obtain_table (environment cache when configured).
  KernelProvider kernels;
  /// When set, B^h is replaced by B^h plus a seeded random half of its
  /// outer boundary layer.
  std::optional<std::uint64_t> perturb_seed;
  /// Also compute the volume term of the Cauchy-Pompeiu split.
  bool volume_terms = false;
};

/// The canonical family B^h = discretize(domain, h) or its perturbed variant.
LatticeSet study_set(const DomainSpec& domain, double h, std::optional<std::uint64_t> perturb_seed);

/// Scaling-limit study. h_list must be strictly decreasing; throws
/// Error("h too coarse") when B^h is empty at the first h.
ConvergenceReport run_study(const DomainSpec& domain, const FunctionSpec& fn, const std::vector<double>& h_list,
                            double quad_tol, const StudyOptions& options = {});

enum class ReportFormat { csv, json };

/// CSV columns "h,err_value,err_d1,err_d2"; JSON mirrors every field.
std::string emit_report(const ConvergenceReport& report, ReportFormat format);
nlohmann::json report_to_json(const ConvergenceReport& report);
ConvergenceReport report_from_json(const nlohmann::json& j);

}  // namespace dholo
