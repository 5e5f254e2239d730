#pragma once

#include <functional>
#include <vector>

#include "delaygraph/config.hpp"
#include "delaygraph/grid.hpp"

namespace delaygraph {

using RealFn = std::function<double(double)>;

inline constexpr int kMinGridPoints = 513;
inline constexpr int kDefaultGridPoints = 1025;

// Edge potentials q_2..q_m on [a-1, 1]. When built from callables the
// callables are kept so the oracle can sample on finer grids.
struct PotentialSet {
  ProblemConfig cfg;
  std::vector<GridFunction> q;  // q[j-2]
  std::vector<RealFn> source;   // empty when built from samples

  static PotentialSet from_functions(const ProblemConfig& cfg, const std::vector<RealFn>& fns,
                                     int points = kDefaultGridPoints);
  static PotentialSet from_grids(const ProblemConfig& cfg, std::vector<GridFunction> grids);
  static PotentialSet zero(const ProblemConfig& cfg, int points = kDefaultGridPoints);

  int grid_points() const { return q.front().size(); }
  const GridFunction& edge(int j) const { return q.at(static_cast<std::size_t>(j - 2)); }
  // q_j(t); zero outside [a-1, 1]
  double value(int j, double t) const;

  void validate() const;
};

}  // namespace delaygraph
