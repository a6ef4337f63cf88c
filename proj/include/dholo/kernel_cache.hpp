#pragma once

#include <filesystem>
#include <memory>
#include <optional>

#include "dholo/kernel.hpp"

namespace dholo {

inline constexpr const char* kKernelOracleVersion = "residue-gk31-v1";

/// Writes "x,y,re,im" rows plus a JSON sidecar
/// {radius, quad_tol, achieved_residual, oracle_version}. Both files are
/// written to temporaries and renamed into place.
void save_table(const KernelTable& table, const std::filesystem::path& csv_path);
KernelTable load_table(const std::filesystem::path& csv_path);

/// On-disk store of kernel tables keyed by (radius, quad_tol).
class KernelCache {
 public:
  explicit KernelCache(std::filesystem::path directory);

  /// Directory from DHOLO_KERNEL_CACHE, if set and nonempty.
  static std::optional<KernelCache> from_environment();

  const std::filesystem::path& directory() const noexcept { return dir_; }

  /// A cached table with radius >= R and quad_tol <= tol, cut to radius R;
  /// otherwise builds one and stores it.
  std::shared_ptr<const KernelTable> get(int radius, double quad_tol);

  std::filesystem::path path_for(int radius, double quad_tol) const;

 private:
  std::filesystem::path dir_;
};

/// Uses the environment cache when configured, else builds in memory.
std::shared_ptr<const KernelTable> obtain_table(int radius, double quad_tol);

}  // namespace dholo
