#include "dholo/kernel_cache.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <unistd.h>

#include <fmt/format.h>
#include <json.hpp>

#include "dholo/errors.hpp"

namespace dholo {

namespace fs = std::filesystem;

namespace {

fs::path sidecar_for(const fs::path& csv) {
  auto p = csv;
  p.replace_extension(".json");
  return p;
}

void write_atomically(const fs::path& target, const std::string& content) {
  auto tmp = target;
  tmp += fmt::format(".tmp{}", static_cast<long>(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw Error("cannot write " + tmp.string());
  }
  fs::rename(tmp, target);
}

}  // namespace

void save_table(const KernelTable& table, const fs::path& csv_path) {
  std::string csv = "x,y,re,im\n";
  const int r = table.radius();
  for (int y = -r; y <= r; ++y)
    for (int x = -r; x <= r; ++x) {
      const auto v = table.at(x, y);
      csv += fmt::format("{},{},{:.17g},{:.17g}\n", x, y, v.real(), v.imag());
    }
  const nlohmann::json meta = {{"radius", table.radius()},
                               {"quad_tol", table.quad_tol()},
                               {"achieved_residual", table.achieved_residual()},
                               {"oracle_version", kKernelOracleVersion}};
  // The CSV lands first so a visible sidecar always has its data.
  write_atomically(csv_path, csv);
  write_atomically(sidecar_for(csv_path), meta.dump(2) + "\n");
}

KernelTable load_table(const fs::path& csv_path) {
  std::ifstream meta_in(sidecar_for(csv_path));
  if (!meta_in) throw Error("missing sidecar for " + csv_path.string());
  const auto meta = nlohmann::json::parse(meta_in);
  const int r = meta.at("radius").get<int>();
  const int side = 2 * r + 1;
  std::vector<Complex> values(static_cast<std::size_t>(side * side));
  std::vector<bool> seen(values.size(), false);

  std::ifstream in(csv_path);
  if (!in) throw Error("cannot read " + csv_path.string());
  std::string line;
  std::getline(in, line);
  if (line != "x,y,re,im") throw Error("bad kernel table header in " + csv_path.string());
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string fx, fy, fre, fim;
    std::getline(row, fx, ',');
    std::getline(row, fy, ',');
    std::getline(row, fre, ',');
    std::getline(row, fim, ',');
    const int x = std::stoi(fx), y = std::stoi(fy);
    if (std::abs(x) > r || std::abs(y) > r) throw Error("kernel table entry outside radius");
    const auto k = static_cast<std::size_t>((y + r) * side + (x + r));
    values[k] = {std::stod(fre), std::stod(fim)};
    seen[k] = true;
  }
  for (bool s : seen)
    if (!s) throw Error("incomplete kernel table " + csv_path.string());
  return KernelTable(r, meta.at("quad_tol").get<double>(), std::move(values),
                     meta.at("achieved_residual").get<double>());
}

KernelCache::KernelCache(fs::path directory) : dir_(std::move(directory)) { fs::create_directories(dir_); }

std::optional<KernelCache> KernelCache::from_environment() {
  const char* dir = std::getenv("DHOLO_KERNEL_CACHE");
  if (dir == nullptr || *dir == '\0') return std::nullopt;
  return KernelCache(dir);
}

fs::path KernelCache::path_for(int radius, double quad_tol) const {
  return dir_ / fmt::format("E_R{}_tol{:.3e}.csv", radius, quad_tol);
}

std::shared_ptr<const KernelTable> KernelCache::get(int radius, double quad_tol) {
  std::optional<fs::path> best;
  int best_radius = 0;
  for (const auto& entry : fs::directory_iterator(dir_)) {
    if (entry.path().extension() != ".json") continue;
    try {
      std::ifstream in(entry.path());
      const auto meta = nlohmann::json::parse(in);
      if (meta.value("oracle_version", "") != kKernelOracleVersion) continue;
      const int r = meta.at("radius").get<int>();
      const double tol = meta.at("quad_tol").get<double>();
      if (r < radius || tol > quad_tol) continue;
      auto csv = entry.path();
      csv.replace_extension(".csv");
      if (!fs::exists(csv)) continue;
      if (!best || r < best_radius || (r == best_radius && csv < *best)) {
        best = csv;
        best_radius = r;
      }
    } catch (const std::exception&) {
      continue;  // unreadable or half-written entries are skipped
    }
  }
  if (best) {
    auto table = load_table(*best);
    if (table.radius() == radius) return std::make_shared<const KernelTable>(std::move(table));
    return std::make_shared<const KernelTable>(table.restricted(radius));
  }
  auto table = build_table(radius, quad_tol);
  save_table(table, path_for(radius, quad_tol));
  return std::make_shared<const KernelTable>(std::move(table));
}

std::shared_ptr<const KernelTable> obtain_table(int radius, double quad_tol) {
  if (auto cache = KernelCache::from_environment()) return cache->get(radius, quad_tol);
  return std::make_shared<const KernelTable>(build_table(radius, quad_tol));
}

}  // namespace dholo
