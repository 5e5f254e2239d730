#pragma once

#include <vector>

#include "delaygraph/potential.hpp"

namespace delaygraph {

struct EdgeTransform {
  double H = 0.0;
  double omega = 0.0;
  GridFunction p;   // on [a-1, 1]
  GridFunction u0;  // on [0, 2-a]
  GridFunction u1;
  bool vanishes = false;  // q identically zero on the grid
  bool u_zero = false;    // u0 = u1 = 0; only the omega terms remain
};

struct EdgeTransforms {
  ProblemConfig cfg;
  std::vector<EdgeTransform> edges;  // edges[j-2]

  const EdgeTransform& edge(int j) const { return edges.at(static_cast<std::size_t>(j - 2)); }
};

EdgeTransforms edge_transforms_from_q(const PotentialSet& q);

// transforms with the given omega per edge and u = 0
EdgeTransforms omega_model_transforms(const ProblemConfig& cfg, const std::vector<double>& omega);

// p = q - 2H int_x^1 q
GridFunction p_from_q(const GridFunction& q, double H);
// u_{0,1} from p, both on [0, 2-a] with the same number of samples
void u_from_p(const GridFunction& p, double a, GridFunction& u0, GridFunction& u1);

}  // namespace delaygraph
