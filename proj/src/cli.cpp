#include "dholo/cli.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "dholo/convergence.hpp"
#include "dholo/errors.hpp"
#include "dholo/integral.hpp"
#include "dholo/kernel.hpp"
#include "dholo/kernel_cache.hpp"
#include "dholo/verify.hpp"

namespace dholo {

namespace {

using nlohmann::json;

/// Thrown for bad flags or config values; maps to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string domain = R"({"shape":"disk","center":[0,0],"radius":1})";
  std::string function = R"({"kind":"exponential","a":[1,0]})";
  std::string h_list;
  double tol = 1e-8;
  std::uint64_t seed = 42;
  std::string out;
  std::string format;
  int radius = 16;
  std::string r_list = "4,8,16,32";
  std::string config;
  std::string fault = "none";
  std::string eval_grid = "set";
  bool perturb = false;
};

json read_json_arg(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (text[first] == '{' || text[first] == '['))
    return json::parse(text);
  std::ifstream in(text);
  if (!in) throw UsageError("cannot open " + text);
  return json::parse(in);
}

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size()) throw UsageError("bad number: " + item);
    out.push_back(v);
  }
  return out;
}

std::vector<int> parse_ints(const std::string& text) {
  std::vector<int> out;
  for (double v : parse_doubles(text)) {
    if (v != static_cast<int>(v)) throw UsageError(fmt::format("not an integer: {}", v));
    out.push_back(static_cast<int>(v));
  }
  return out;
}

std::string fmt_double(double v) { return fmt::format("{:.17g}", v); }

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary | std::ios::trunc);
  if (!file) throw UsageError("cannot write " + cfg.out);
  file << text;
}

/// Fills fields still at their defaults from a JSON config object; flags
/// given on the command line win.
void apply_config(RunConfig& cfg, const CLI::App& sub) {
  if (cfg.config.empty()) return;
  const json j = read_json_arg(cfg.config);
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  auto given = [&](const std::string& flag) {
    const auto* opt = sub.get_option_no_throw(flag);
    return opt != nullptr && opt->count() > 0;
  };
  auto as_text = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  for (const auto& [key, v] : j.items()) {
    if (key == "domain" && !given("--domain")) cfg.domain = as_text(v);
    else if (key == "function" && !given("--function")) cfg.function = as_text(v);
    else if (key == "h" && !given("--h")) {
      if (v.is_array()) {
        std::string s;
        for (const auto& x : v) s += (s.empty() ? "" : ",") + fmt_double(x.get<double>());
        cfg.h_list = s;
      } else {
        cfg.h_list = v.is_string() ? v.get<std::string>() : fmt_double(v.get<double>());
      }
    } else if (key == "tol" && !given("--tol")) cfg.tol = v.get<double>();
    else if (key == "seed" && !given("--seed")) cfg.seed = v.get<std::uint64_t>();
    else if (key == "out" && !given("--out")) cfg.out = v.get<std::string>();
    else if (key == "format" && !given("--format")) cfg.format = v.get<std::string>();
    else if (key == "radius" && !given("--radius")) cfg.radius = v.get<int>();
    else if (key == "R_list" && !given("--R-list")) {
      if (v.is_array()) {
        std::string s;
        for (const auto& x : v) s += (s.empty() ? "" : ",") + std::to_string(x.get<int>());
        cfg.r_list = s;
      } else {
        cfg.r_list = v.get<std::string>();
      }
    } else if (key == "inject_fault" && !given("--inject-fault")) cfg.fault = v.get<std::string>();
    else if (key == "eval_grid" && !given("--eval-grid")) cfg.eval_grid = v.get<std::string>();
    else if (key == "perturb" && !given("--perturb")) cfg.perturb = v.get<bool>();
    else if (key != "domain" && key != "function" && key != "h" && key != "tol" && key != "seed" &&
             key != "out" && key != "format" && key != "radius" && key != "R_list" && key != "inject_fault" &&
             key != "eval_grid" && key != "perturb")
      throw UsageError("unknown config key: " + key);
  }
}

ReportFormat parse_format(const std::string& f, ReportFormat fallback) {
  if (f.empty()) return fallback;
  if (f == "csv") return ReportFormat::csv;
  if (f == "json") return ReportFormat::json;
  throw UsageError("format must be csv or json");
}

double single_h(const RunConfig& cfg, double fallback) {
  if (cfg.h_list.empty()) return fallback;
  const auto hs = parse_doubles(cfg.h_list);
  if (hs.size() != 1) throw UsageError("expected a single --h value");
  if (!(hs[0] > 0.0)) throw UsageError("h must be positive");
  return hs[0];
}

void require_positive_tol(const RunConfig& cfg) {
  if (!(cfg.tol > 0.0)) throw UsageError("tolerance must be positive");
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  require_positive_tol(cfg);
  VerifyOptions o;
  o.domain = parse_domain(read_json_arg(cfg.domain));
  o.h = single_h(cfg, 0.1);
  o.quad_tol = cfg.tol;
  o.seed = cfg.seed;
  if (cfg.fault == "flip-normal") o.fault = Fault::flip_normal;
  else if (cfg.fault != "none") throw UsageError("unknown fault: " + cfg.fault);

  const auto checks = run_verify_suite(o);
  bool pass = true;
  for (const auto& c : checks) pass = pass && c.pass;
  const auto fmt_kind = parse_format(cfg.format, ReportFormat::json);
  std::string text;
  if (fmt_kind == ReportFormat::json) {
    const json j = {{"seed", cfg.seed}, {"h", o.h},        {"quad_tol", o.quad_tol},
                    {"fault", cfg.fault}, {"checks", checks}, {"pass", pass}};
    text = j.dump(2) + "\n";
  } else {
    text = "check,value,limit,pass\n";
    for (const auto& c : checks)
      text += fmt::format("{},{:.17g},{:.17g},{}\n", c.name, c.value, c.limit, c.pass ? "true" : "false");
  }
  emit(cfg, text, out);
  return pass ? kExitOk : kExitViolation;
}

int cmd_kernel(const RunConfig& cfg, std::ostream& out) {
  require_positive_tol(cfg);
  if (cfg.radius < 2) throw UsageError("radius must be at least 2");
  const auto table = build_table(cfg.radius, cfg.tol);
  const double limit = 10.0 * cfg.tol;
  const bool pass = table.achieved_residual() <= limit;
  if (!cfg.out.empty()) save_table(table, cfg.out);
  const json j = {{"radius", table.radius()},
                  {"quad_tol", table.quad_tol()},
                  {"achieved_residual", table.achieved_residual()},
                  {"limit", limit},
                  {"oracle_version", kKernelOracleVersion},
                  {"pass", pass}};
  out << j.dump(2) << "\n";
  return pass ? kExitOk : kExitViolation;
}

LatticeSet eval_set(const std::string& grid, const LatticeSet& b) {
  if (grid == "set") return b;
  if (grid == "interior") return interior(b);
  if (grid == "boundary") return boundary(b);
  if (grid == "closure") return closure(b);
  // Explicit list "ix:iy;ix:iy;..."
  std::vector<LatticePoint> pts;
  std::stringstream ss(grid);
  std::string item;
  while (std::getline(ss, item, ';')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw UsageError("eval grid must be set|interior|boundary|closure or ix:iy;...");
    pts.push_back({std::stoi(item.substr(0, colon)), std::stoi(item.substr(colon + 1))});
  }
  return LatticeSet(b.spacing(), std::move(pts));
}

int cmd_reconstruct(const RunConfig& cfg, std::ostream& out) {
  require_positive_tol(cfg);
  const auto domain = parse_domain(read_json_arg(cfg.domain));
  const auto fn = parse_function(read_json_arg(cfg.function));
  const double h = single_h(cfg, 0.1);
  fn.require_regular_on(domain);
  const auto b = discretize(domain, h);
  if (b.empty()) throw UsageError("domain has an empty discretization at this h");
  const auto targets = eval_set(cfg.eval_grid, b);
  const auto table = obtain_table(std::max(2, required_table_radius(b, targets)), cfg.tol);
  const BMKernelContext ctx(b, table);
  const auto fh = ctx.boundary_reconstruct(sample(fn, boundary(b)), targets);
  std::string text = "ix,iy,re,im,abs_err\n";
  for (auto z : targets) {
    const Complex v = fh.at(z);
    const Complex expected = b.contains(z) ? fn.value(z.position(h)) : Complex{};
    text += fmt::format("{},{},{:.17g},{:.17g},{:.17g}\n", z.ix, z.iy, v.real(), v.imag(), std::abs(v - expected));
  }
  emit(cfg, text, out);
  return kExitOk;
}

int cmd_converge(const RunConfig& cfg, std::ostream& out) {
  require_positive_tol(cfg);
  const auto domain = parse_domain(read_json_arg(cfg.domain));
  const auto fn = parse_function(read_json_arg(cfg.function));
  const auto hs = parse_doubles(cfg.h_list.empty() ? "0.2,0.1,0.05,0.025" : cfg.h_list);
  StudyOptions opts;
  if (cfg.perturb) opts.perturb_seed = cfg.seed;
  ConvergenceReport report;
  try {
    report = run_study(domain, fn, hs, cfg.tol, opts);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  emit(cfg, emit_report(report, parse_format(cfg.format, ReportFormat::json)), out);
  return kExitOk;
}

int cmd_norms(const RunConfig& cfg, std::ostream& out) {
  require_positive_tol(cfg);
  const auto radii = parse_ints(cfg.r_list);
  if (radii.empty()) throw UsageError("empty R list");
  for (std::size_t k = 0; k < radii.size(); ++k)
    if (radii[k] < 1 || (k > 0 && radii[k] <= radii[k - 1])) throw UsageError("R list must be increasing and positive");
  const auto table = obtain_table(radii.back() + 2, cfg.tol);
  const auto rows = norm_estimates(*table, radii);
  bool monotone = true;
  for (std::size_t k = 1; k < rows.size(); ++k)
    monotone = monotone && rows[k].sum_e3 >= rows[k - 1].sum_e3 && rows[k].sum_dz2 >= rows[k - 1].sum_dz2 &&
               rows[k].sum_dzz1 >= rows[k - 1].sum_dzz1;
  const auto fmt_kind = parse_format(cfg.format, ReportFormat::csv);
  std::string text;
  if (fmt_kind == ReportFormat::csv) {
    text = "R,sum_e3,sum_dz2,sum_dzz1,inc_e3,inc_dz2,inc_dzz1\n";
    for (const auto& r : rows)
      text += fmt::format("{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", r.radius, r.sum_e3, r.sum_dz2,
                          r.sum_dzz1, r.inc_e3, r.inc_dz2, r.inc_dzz1);
  } else {
    json arr = json::array();
    for (const auto& r : rows)
      arr.push_back({{"R", r.radius},
                     {"sum_e3", r.sum_e3},
                     {"sum_dz2", r.sum_dz2},
                     {"sum_dzz1", r.sum_dzz1},
                     {"inc_e3", r.inc_e3},
                     {"inc_dz2", r.inc_dz2},
                     {"inc_dzz1", r.inc_dzz1}});
    text = json{{"quad_tol", cfg.tol}, {"rows", arr}, {"monotone", monotone}}.dump(2) + "\n";
  }
  emit(cfg, text, out);
  return monotone ? kExitOk : kExitViolation;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discrete holomorphic function toolkit on square lattices", "dholo"};
  app.require_subcommand(1);
  // --h is the lattice spacing, so help is long-form only.
  app.set_help_flag("--help", "Print this help message and exit");
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--domain", cfg.domain, "Domain JSON (file path or inline)");
    sub->add_option("--tol", cfg.tol, "Kernel quadrature tolerance");
    sub->add_option("--out", cfg.out, "Output path (default stdout)");
    sub->add_option("--format", cfg.format, "csv or json");
    sub->add_option("--config", cfg.config, "JSON config file; flags override it");
  };

  auto* verify = app.add_subcommand("verify", "Run the exact-identity suite");
  verify->set_help_flag("--help", "Print this help message and exit");
  add_common(verify);
  verify->add_option("--h", cfg.h_list, "Lattice spacing");
  verify->add_option("--seed", cfg.seed, "Seed for random sets and functions");
  verify->add_option("--inject-fault", cfg.fault, "none or flip-normal");

  auto* kernel = app.add_subcommand("kernel", "Tabulate the fundamental solution");
  kernel->set_help_flag("--help", "Print this help message and exit");
  kernel->add_option("--radius", cfg.radius, "Window radius R");
  kernel->add_option("--tol", cfg.tol, "Quadrature tolerance");
  kernel->add_option("--out", cfg.out, "CSV path; a JSON sidecar is written next to it");
  kernel->add_option("--config", cfg.config, "JSON config file; flags override it");

  auto* reconstruct = app.add_subcommand("reconstruct", "Boundary reconstruction f^h");
  reconstruct->set_help_flag("--help", "Print this help message and exit");
  add_common(reconstruct);
  reconstruct->add_option("--function", cfg.function, "Function JSON (file path or inline)");
  reconstruct->add_option("--h", cfg.h_list, "Lattice spacing");
  reconstruct->add_option("--eval-grid", cfg.eval_grid, "set, interior, boundary, closure or ix:iy;...");

  auto* converge = app.add_subcommand("converge", "Scaling-limit study");
  converge->set_help_flag("--help", "Print this help message and exit");
  add_common(converge);
  converge->add_option("--function", cfg.function, "Function JSON (file path or inline)");
  converge->add_option("--h", cfg.h_list, "Comma-separated decreasing spacings");
  converge->add_option("--seed", cfg.seed, "Seed for the perturbed family");
  converge->add_flag("--perturb", cfg.perturb, "Use the randomly dilated family");

  auto* norms = app.add_subcommand("norms", "Partial sums of the kernel norms");
  norms->set_help_flag("--help", "Print this help message and exit");
  norms->add_option("--R-list", cfg.r_list, "Comma-separated increasing radii");
  norms->add_option("--tol", cfg.tol, "Quadrature tolerance");
  norms->add_option("--out", cfg.out, "Output path (default stdout)");
  norms->add_option("--format", cfg.format, "csv or json");
  norms->add_option("--config", cfg.config, "JSON config file; flags override it");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    apply_config(cfg, *sub);
    if (sub == verify) return cmd_verify(cfg, out);
    if (sub == kernel) return cmd_kernel(cfg, out);
    if (sub == reconstruct) return cmd_reconstruct(cfg, out);
    if (sub == converge) return cmd_converge(cfg, out);
    return cmd_norms(cfg, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const json::exception& e) {
    err << "error: bad JSON: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace dholo
