#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "delaygraph/spectrum.hpp"

namespace delaygraph::cli {

struct SpectrumFile {
  std::string config_hash;
  int nu = -1;
  std::vector<cplx> values;
};

void write_spectrum_csv(const std::filesystem::path& p, const Spectrum& sp, const std::string& hash);
SpectrumFile read_spectrum_csv(const std::filesystem::path& p);

void write_grid_csv(const std::filesystem::path& p, const GridFunction& f, const std::string& column,
                    const std::string& hash);

}  // namespace delaygraph::cli
