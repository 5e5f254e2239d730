#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "delaygraph/inverse.hpp"
#include "delaygraph/potential.hpp"
#include "json.hpp"

namespace delaygraph::cli {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PotentialSpec {
  std::string expr;                 // inline expression, or
  std::filesystem::path file;       // sample file (one value per line, or x,value)
  bool is_file() const { return !file.empty(); }
};

struct Tolerances {
  double residual = 1e-10;
  double imag = 1e-9;
  double max_condition = 1e8;
};

struct RunConfig {
  ProblemConfig problem;
  int N = 64;
  std::vector<int> N_sweep;  // roundtrip only; defaults to {N}
  int P = kDefaultGridPoints;
  double spectrum_factor = 2.0;
  int spectrum_size = 0;     // 0: derived from N
  std::vector<PotentialSpec> potentials;
  Tolerances tol;
  UMethod u_method = UMethod::smooth_fit;
  TailModel tail_model = TailModel::omega_refined;
  std::filesystem::path output_dir = "out";
  nlohmann::json source;     // the document as read

  bool has_potentials() const { return !potentials.empty(); }
  int spectrum_count() const;
  int spectrum_count(int n) const;
  PotentialSet potential_set() const;
  InverseOptions inverse_options() const;
  nlohmann::json resolved() const;
};

// base_dir resolves relative sample-file paths
RunConfig parse_run_config(const nlohmann::json& doc, const std::filesystem::path& base_dir = {});
RunConfig load_run_config(const std::filesystem::path& path);

// FNV-1a over m, a and H printed with 17 significant digits
std::uint64_t config_hash(const ProblemConfig& cfg);
std::string hash_hex(std::uint64_t h);

std::string fmt17(double v);

}  // namespace delaygraph::cli
