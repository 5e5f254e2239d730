#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace delaygraph::cli {

enum ExitCode : int {
  kOk = 0,
  kFailed = 1,         // selftest failure or unexpected error
  kConfigError = 2,    // parse, schema or input-file problems
  kCertification = 3,  // spectrum certification failed
  kInverseError = 4,   // inverse pipeline error
  kHashMismatch = 5,   // spectra belong to another configuration
};

struct CommandOptions {
  std::optional<int> N;
  std::optional<int> grid;
  std::optional<std::filesystem::path> out_dir;
  bool force = false;
  std::filesystem::path spec0;
  std::filesystem::path spec1;
  double tolerance_scale = 1.0;
};

int cmd_forward(const std::filesystem::path& config, const CommandOptions& opt, std::ostream& log);
int cmd_invert(const std::filesystem::path& config, const CommandOptions& opt, std::ostream& log);
int cmd_roundtrip(const std::filesystem::path& config, const CommandOptions& opt, std::ostream& log);
int cmd_selftest(const CommandOptions& opt, std::ostream& log);

}  // namespace delaygraph::cli
