#include "run_config.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "expr.hpp"

namespace delaygraph::cli {

using nlohmann::json;

namespace {

const std::set<std::string> kKeys = {"m", "a", "H", "N", "N_sweep", "P", "spectrum_factor", "spectrum_size",
                                     "potentials", "tolerances", "u_method", "tail_model", "output_dir"};
const std::set<std::string> kTolKeys = {"residual", "imag", "max_condition"};

[[noreturn]] void bad(const std::string& what) { throw ConfigError("config: " + what); }

double number(const json& j, const std::string& key) {
  if (!j.is_number()) bad("'" + key + "' must be a number");
  return j.get<double>();
}

int integer(const json& j, const std::string& key) {
  if (!j.is_number_integer()) bad("'" + key + "' must be an integer");
  return j.get<int>();
}

std::vector<double> read_samples(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) bad("cannot open sample file " + p.string());
  std::vector<double> v;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.find(',');
    const std::string field = comma == std::string::npos ? line : line.substr(comma + 1);
    try {
      std::size_t used = 0;
      v.push_back(std::stod(field, &used));
    } catch (const std::exception&) {
      if (v.empty()) continue;  // header row
      bad("unreadable value in " + p.string() + ": " + line);
    }
  }
  return v;
}

}  // namespace

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::uint64_t config_hash(const ProblemConfig& cfg) {
  std::string s = "m=" + std::to_string(cfg.m) + ";a=" + fmt17(cfg.a) + ";H=";
  for (double h : cfg.H) s += fmt17(h) + ",";
  std::uint64_t x = 14695981039346656037ull;
  for (unsigned char c : s) {
    x ^= c;
    x *= 1099511628211ull;
  }
  return x;
}

std::string hash_hex(std::uint64_t h) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

RunConfig parse_run_config(const json& doc, const std::filesystem::path& base_dir) {
  if (!doc.is_object()) bad("top level must be an object");
  for (const auto& [k, v] : doc.items())
    if (!kKeys.count(k)) bad("unknown key '" + k + "'");
  for (const char* k : {"m", "a", "H"})
    if (!doc.contains(k)) bad(std::string("missing required key '") + k + "'");

  RunConfig rc;
  rc.source = doc;
  rc.problem.m = integer(doc["m"], "m");
  rc.problem.a = number(doc["a"], "a");
  if (!doc["H"].is_array()) bad("'H' must be an array of numbers");
  for (const auto& h : doc["H"]) rc.problem.H.push_back(number(h, "H"));
  try {
    rc.problem.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  if (doc.contains("N")) rc.N = integer(doc["N"], "N");
  if (rc.N < 1) bad("'N' must be positive");
  if (doc.contains("N_sweep")) {
    if (!doc["N_sweep"].is_array() || doc["N_sweep"].empty()) bad("'N_sweep' must be a non-empty array");
    for (const auto& n : doc["N_sweep"]) {
      rc.N_sweep.push_back(integer(n, "N_sweep"));
      if (rc.N_sweep.back() < 1) bad("'N_sweep' entries must be positive");
    }
  }
  if (doc.contains("P")) rc.P = integer(doc["P"], "P");
  if (rc.P < kMinGridPoints || rc.P % 2 == 0)
    bad("'P' must be odd and >= " + std::to_string(kMinGridPoints));
  if (doc.contains("spectrum_factor")) rc.spectrum_factor = number(doc["spectrum_factor"], "spectrum_factor");
  if (rc.spectrum_factor <= 0) bad("'spectrum_factor' must be positive");
  if (doc.contains("spectrum_size")) rc.spectrum_size = integer(doc["spectrum_size"], "spectrum_size");
  if (rc.spectrum_size < 0) bad("'spectrum_size' must be >= 0");

  if (doc.contains("potentials")) {
    const json& ps = doc["potentials"];
    if (!ps.is_array()) bad("'potentials' must be an array");
    if (static_cast<int>(ps.size()) != rc.problem.m - 1)
      bad("'potentials' needs one entry per edge j = 2..m (" + std::to_string(rc.problem.m - 1) + ")");
    for (const auto& p : ps) {
      PotentialSpec s;
      if (p.is_string()) {
        s.expr = p.get<std::string>();
        try {
          Expr::parse(s.expr);
        } catch (const ExprError& e) {
          throw ConfigError(std::string("config: ") + e.what());
        }
      } else if (p.is_number()) {
        s.expr = fmt17(p.get<double>());
      } else if (p.is_object()) {
        for (const auto& [k, v] : p.items())
          if (k != "file") bad("unknown key '" + k + "' in potential entry");
        if (!p.contains("file") || !p["file"].is_string()) bad("potential entry needs a 'file' string");
        s.file = p["file"].get<std::string>();
        if (s.file.is_relative() && !base_dir.empty()) s.file = base_dir / s.file;
      } else {
        bad("potential entries must be expressions or {\"file\": path}");
      }
      rc.potentials.push_back(std::move(s));
    }
  }

  if (doc.contains("tolerances")) {
    const json& t = doc["tolerances"];
    if (!t.is_object()) bad("'tolerances' must be an object");
    for (const auto& [k, v] : t.items())
      if (!kTolKeys.count(k)) bad("unknown key '" + k + "' in tolerances");
    if (t.contains("residual")) rc.tol.residual = number(t["residual"], "tolerances.residual");
    if (t.contains("imag")) rc.tol.imag = number(t["imag"], "tolerances.imag");
    if (t.contains("max_condition")) rc.tol.max_condition = number(t["max_condition"], "tolerances.max_condition");
  }
  if (doc.contains("u_method")) {
    const std::string m = doc["u_method"].is_string() ? doc["u_method"].get<std::string>() : "";
    if (m == "smooth_fit") rc.u_method = UMethod::smooth_fit;
    else if (m == "gram_projection") rc.u_method = UMethod::gram_projection;
    else bad("'u_method' must be \"smooth_fit\" or \"gram_projection\"");
  }
  if (doc.contains("tail_model")) {
    const std::string m = doc["tail_model"].is_string() ? doc["tail_model"].get<std::string>() : "";
    if (m == "omega_refined") rc.tail_model = TailModel::omega_refined;
    else if (m == "known_h") rc.tail_model = TailModel::known_h;
    else if (m == "unperturbed") rc.tail_model = TailModel::unperturbed;
    else bad("'tail_model' must be \"omega_refined\", \"known_h\" or \"unperturbed\"");
  }
  if (doc.contains("output_dir")) {
    if (!doc["output_dir"].is_string()) bad("'output_dir' must be a string");
    rc.output_dir = doc["output_dir"].get<std::string>();
  }
  if (rc.N_sweep.empty()) rc.N_sweep = {rc.N};
  return rc;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: JSON parse error: ") + e.what());
  }
  return parse_run_config(doc, path.parent_path());
}

int RunConfig::spectrum_count(int n) const {
  return std::max(spectrum_size, required_spectrum_size(problem, n, spectrum_factor));
}

int RunConfig::spectrum_count() const {
  int n = N;
  for (int k : N_sweep) n = std::max(n, k);
  return spectrum_count(n);
}

PotentialSet RunConfig::potential_set() const {
  if (!has_potentials()) throw ConfigError("config: 'potentials' required for this command");
  bool any_file = false;
  for (const auto& p : potentials) any_file = any_file || p.is_file();
  if (!any_file) {
    std::vector<RealFn> fns;
    for (const auto& p : potentials) fns.push_back(Expr::parse(p.expr));
    return PotentialSet::from_functions(problem, fns, P);
  }
  std::vector<GridFunction> grids;
  const double lo = problem.a - 1.0;
  for (const auto& p : potentials) {
    if (p.is_file()) {
      auto v = read_samples(p.file);
      if (static_cast<int>(v.size()) != P)
        bad(p.file.string() + " holds " + std::to_string(v.size()) + " samples, expected P = " + std::to_string(P));
      grids.emplace_back(lo, 1.0, std::move(v));
    } else {
      grids.push_back(GridFunction::sample(lo, 1.0, P, Expr::parse(p.expr)));
    }
  }
  try {
    return PotentialSet::from_grids(problem, std::move(grids));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

InverseOptions RunConfig::inverse_options() const {
  InverseOptions o;
  o.grid_points = P;
  o.method = u_method;
  o.tail = tail_model;
  o.max_condition = tol.max_condition;
  return o;
}

json RunConfig::resolved() const {
  json j;
  j["m"] = problem.m;
  j["a"] = problem.a;
  j["H"] = problem.H;
  j["N"] = N;
  j["N_sweep"] = N_sweep;
  j["P"] = P;
  j["spectrum_factor"] = spectrum_factor;
  j["spectrum_size"] = spectrum_count();
  json ps = json::array();
  for (const auto& p : potentials) ps.push_back(p.is_file() ? json{{"file", p.file.string()}} : json(p.expr));
  j["potentials"] = ps;
  j["tolerances"] = {{"residual", tol.residual}, {"imag", tol.imag}, {"max_condition", tol.max_condition}};
  j["u_method"] = u_method == UMethod::smooth_fit ? "smooth_fit" : "gram_projection";
  j["tail_model"] = tail_model == TailModel::omega_refined ? "omega_refined"
                    : tail_model == TailModel::known_h   ? "known_h"
                                                         : "unperturbed";
  j["output_dir"] = output_dir.string();
  return j;
}

}  // namespace delaygraph::cli
