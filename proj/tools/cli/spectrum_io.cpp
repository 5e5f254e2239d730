#include "spectrum_io.hpp"

#include <fstream>
#include <sstream>

#include "run_config.hpp"

namespace delaygraph::cli {

void write_spectrum_csv(const std::filesystem::path& p, const Spectrum& sp, const std::string& hash) {
  std::ofstream out(p);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << "# config_hash=" << hash << "\n# nu=" << sp.nu << "\n";
  out << "n,lambda_re,lambda_im,residual,paired_lambda0\n";
  for (int n = 0; n < sp.size(); ++n)
    out << n + 1 << ',' << fmt17(sp.values[n].real()) << ',' << fmt17(sp.values[n].imag()) << ','
        << fmt17(sp.residuals[n]) << ',' << fmt17(sp.paired_unperturbed[n]) << '\n';
}

SpectrumFile read_spectrum_csv(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw ConfigError("cannot open spectrum file " + p.string());
  SpectrumFile f;
  std::string line;
  int lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      std::string key = line.substr(1, eq - 1);
      key.erase(0, key.find_first_not_of(' '));
      const std::string val = line.substr(eq + 1);
      if (key == "config_hash") f.config_hash = val;
      if (key == "nu") f.nu = std::stoi(val);
      continue;
    }
    if (!header) {
      if (line.rfind("n,lambda_re,lambda_im", 0) != 0)
        throw ConfigError(p.string() + ": missing header n,lambda_re,lambda_im,...");
      header = true;
      continue;
    }
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, ',')) cols.push_back(c);
    if (cols.size() < 3)
      throw ConfigError(p.string() + ":" + std::to_string(lineno) + ": truncated row");
    try {
      const int n = std::stoi(cols[0]);
      if (n != static_cast<int>(f.values.size()) + 1)
        throw ConfigError(p.string() + ":" + std::to_string(lineno) + ": rows out of sequence");
      f.values.emplace_back(std::stod(cols[1]), std::stod(cols[2]));
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception&) {
      throw ConfigError(p.string() + ":" + std::to_string(lineno) + ": unreadable row");
    }
  }
  if (!header) throw ConfigError(p.string() + ": empty spectrum file");
  return f;
}

void write_grid_csv(const std::filesystem::path& p, const GridFunction& f, const std::string& column,
                    const std::string& hash) {
  std::ofstream out(p);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << "# config_hash=" << hash << "\n";
  out << "x," << column << "\n";
  for (int i = 0; i < f.size(); ++i) out << fmt17(f.x(i)) << ',' << fmt17(f[i]) << '\n';
}

}  // namespace delaygraph::cli
