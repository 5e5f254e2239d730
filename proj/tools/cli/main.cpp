#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

using namespace delaygraph::cli;

int main(int argc, char** argv) {
  CLI::App app{"Two-spectra inverse problem on a star graph with global delay"};
  app.require_subcommand(1);

  CommandOptions opt;
  std::string config;
  int n = 0, grid = 0;
  std::string out_dir;

  auto common = [&](CLI::App* sub) {
    sub->add_option("config", config, "run configuration (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--n", n, "moment truncation N (overrides the config)");
    sub->add_option("--grid", grid, "grid points P (overrides the config)");
    sub->add_option("--out-dir", out_dir, "output directory (overrides the config)");
  };
  auto* fwd = app.add_subcommand("forward", "compute both spectra");
  common(fwd);
  auto* inv = app.add_subcommand("invert", "recover the potentials from two spectra");
  common(inv);
  std::string spec0, spec1;
  inv->add_option("--spec0", spec0, "nu=0 spectrum CSV")->required();
  inv->add_option("--spec1", spec1, "nu=1 spectrum CSV")->required();
  inv->add_flag("--force", opt.force, "accept spectra with a different config hash");
  auto* rt = app.add_subcommand("roundtrip", "forward, invert and compare with the source potentials");
  common(rt);
  auto* st = app.add_subcommand("selftest", "oracle agreement checks");
  st->add_option("--tolerance-scale", opt.tolerance_scale)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kConfigError;
  }
  if (n) opt.N = n;
  if (grid) opt.grid = grid;
  if (!out_dir.empty()) opt.out_dir = out_dir;
  opt.spec0 = spec0;
  opt.spec1 = spec1;

  if (fwd->parsed()) return cmd_forward(config, opt, std::cout);
  if (inv->parsed()) return cmd_invert(config, opt, std::cout);
  if (rt->parsed()) return cmd_roundtrip(config, opt, std::cout);
  return cmd_selftest(opt, std::cout);
}
