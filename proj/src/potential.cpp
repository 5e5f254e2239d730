#include "delaygraph/potential.hpp"

#include <cmath>
#include <stdexcept>

namespace delaygraph {

PotentialSet PotentialSet::from_functions(const ProblemConfig& cfg, const std::vector<RealFn>& fns,
                                          int points) {
  PotentialSet ps;
  ps.cfg = cfg;
  ps.source = fns;
  for (const auto& f : fns) ps.q.push_back(GridFunction::sample(cfg.a - 1.0, 1.0, points, f));
  ps.validate();
  return ps;
}

PotentialSet PotentialSet::from_grids(const ProblemConfig& cfg, std::vector<GridFunction> grids) {
  PotentialSet ps;
  ps.cfg = cfg;
  ps.q = std::move(grids);
  ps.validate();
  return ps;
}

PotentialSet PotentialSet::zero(const ProblemConfig& cfg, int points) {
  std::vector<RealFn> fns(static_cast<std::size_t>(cfg.m - 1), [](double) { return 0.0; });
  return from_functions(cfg, fns, points);
}

double PotentialSet::value(int j, double t) const {
  if (t < cfg.a - 1.0 || t > 1.0) return 0.0;
  if (!source.empty()) return source.at(static_cast<std::size_t>(j - 2))(t);
  return edge(j).cubic(t);
}

void PotentialSet::validate() const {
  cfg.validate();
  if (static_cast<int>(q.size()) != cfg.m - 1)
    throw std::invalid_argument("potential: need one grid per edge j = 2..m");
  if (!source.empty() && source.size() != q.size())
    throw std::invalid_argument("potential: source count mismatch");
  const int P = q.front().size();
  if (P < kMinGridPoints || P % 2 == 0)
    throw std::invalid_argument("potential: grid needs an odd number >= 513 of samples");
  for (const auto& g : q) {
    if (g.size() != P) throw std::invalid_argument("potential: edges must share one grid");
    if (std::abs(g.x0 - (cfg.a - 1.0)) > 1e-14 || std::abs(g.x1 - 1.0) > 1e-14)
      throw std::invalid_argument("potential: grid must cover [a-1, 1]");
    for (double v : g.values)
      if (!std::isfinite(v)) throw std::invalid_argument("potential: non-finite sample");
  }
}

}  // namespace delaygraph
