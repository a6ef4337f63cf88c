#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>
#include <unistd.h>

#include "dholo/cli.hpp"

using namespace dholo;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "dholo");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("dholo_cli_" + std::to_string(::getpid()) + "_" + name);
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("verify passes on seed 42") {
    const auto r = run({"verify", "--seed", "42"});
    CHECK(r.code == kExitOk);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("pass") == true);
    CHECK(j.at("seed") == 42);
    CHECK(j.at("checks").size() == 8);
  }

  TEST_CASE("flipped normal is caught") {
    const auto r = run({"verify", "--inject-fault", "flip-normal"});
    CHECK(r.code == kExitViolation);
    bool stokes_failed = false;
    const auto parsed = nlohmann::json::parse(r.out);
    for (const auto& c : parsed.at("checks"))
      if (c.at("name") == "stokes_flux") stokes_failed = c.at("pass") == false && c.at("value").get<double>() > 0.0;
    CHECK(stokes_failed);
  }

  TEST_CASE("empty or unusable domains exit with 2") {
    CHECK(run({"verify", "--domain", R"({"shape":"union","members":[]})"}).code == kExitUsage);
    CHECK(run({"verify", "--domain", R"({"shape":"disk","center":[0,0],"radius":0.05})"}).code == kExitUsage);
    CHECK(run({"converge", "--domain", R"({"shape":"disk","center":[0,0],"radius":0.05})", "--h", "0.2,0.1,0.05"})
              .code == kExitUsage);
  }

  TEST_CASE("usage errors exit with 2") {
    CHECK(run({}).code == kExitUsage);
    CHECK(run({"frobnicate"}).code == kExitUsage);
    CHECK(run({"verify", "--tol", "-1"}).code == kExitUsage);
    CHECK(run({"verify", "--domain", "{not json"}).code == kExitUsage);
    CHECK(run({"converge", "--h", "0.1,0.2,0.05"}).code == kExitUsage);
    CHECK(run({"norms", "--R-list", "8,4"}).code == kExitUsage);
    CHECK(run({"verify", "--inject-fault", "nonsense"}).code == kExitUsage);
    CHECK(run({"verify", "--help"}).code == kExitOk);
  }

  TEST_CASE("norms table") {
    const auto r = run({"norms", "--R-list", "2,4,8"});
    CHECK(r.code == kExitOk);
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "R,sum_e3,sum_dz2,sum_dzz1,inc_e3,inc_dz2,inc_dzz1");
    int rows = 0;
    double prev = -1.0;
    while (std::getline(lines, line)) {
      ++rows;
      const double s = std::stod(line.substr(line.find(',') + 1));
      CHECK(s >= prev);
      prev = s;
    }
    CHECK(rows == 3);
    const auto j = run({"norms", "--R-list", "2,4,8", "--format", "json"});
    const auto parsed = nlohmann::json::parse(j.out);
    CHECK(parsed.at("rows").size() == 3);
    CHECK(parsed.dump(2) + "\n" == j.out);
  }

  TEST_CASE("identical runs give identical bytes") {
    const std::vector<std::string> args{"converge", "--h", "0.4,0.2,0.1", "--tol", "1e-9", "--format", "json"};
    CHECK(run(args).out == run(args).out);
    CHECK(run({"verify", "--seed", "7"}).out == run({"verify", "--seed", "7"}).out);
  }

  TEST_CASE("kernel writes a table and its sidecar") {
    const auto path = scratch("table.csv");
    const auto r = run({"kernel", "--radius", "4", "--tol", "1e-9", "--out", path.string()});
    CHECK(r.code == kExitOk);
    CHECK(std::filesystem::exists(path));
    auto sidecar = path;
    sidecar.replace_extension(".json");
    std::ifstream meta(sidecar);
    CHECK(nlohmann::json::parse(meta).at("radius") == 4);
    std::filesystem::remove(path);
    std::filesystem::remove(sidecar);
  }

  TEST_CASE("reconstruct emits values and errors") {
    const auto r = run({"reconstruct", "--function", R"({"kind":"polynomial","coefficients":[0,0,1]})", "--h", "0.2",
                        "--eval-grid", "0:0;2:1;9:0"});
    CHECK(r.code == kExitOk);
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "ix,iy,re,im,abs_err");
    int rows = 0;
    while (std::getline(lines, line)) {
      ++rows;
      CHECK(std::stod(line.substr(line.rfind(',') + 1)) < 1e-12);
    }
    CHECK(rows == 3);
  }

  TEST_CASE("config file with flag override") {
    const auto cfg = scratch("config.json");
    {
      std::ofstream out(cfg);
      out << R"({"h": [0.4, 0.2, 0.1], "tol": 1e-9, "format": "csv",
                "function": {"kind": "polynomial", "coefficients": [0, 1]}})";
    }
    const auto r = run({"converge", "--config", cfg.string()});
    CHECK(r.code == kExitOk);
    CHECK(r.out.rfind("h,err_value,err_d1,err_d2\n", 0) == 0);
    const auto o = run({"converge", "--config", cfg.string(), "--format", "json"});
    CHECK(nlohmann::json::parse(o.out).at("metadata").at("function").at("kind") == "polynomial");
    std::filesystem::remove(cfg);
    const auto bad = scratch("bad.json");
    {
      std::ofstream out(bad);
      out << R"({"bogus": 1})";
    }
    CHECK(run({"converge", "--config", bad.string()}).code == kExitUsage);
    std::filesystem::remove(bad);
  }
}
