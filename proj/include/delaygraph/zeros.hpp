#pragma once

#include <vector>

#include "delaygraph/config.hpp"

namespace delaygraph {

struct UnperturbedZero {
  double lambda;
  int multiplicity;
};

// First N zeros of Delta_nu^00, ascending, each repeated per multiplicity.
std::vector<UnperturbedZero> zeros_of_delta00(int nu, const ProblemConfig& cfg, int N);

// Zeros at rho = pi(n - 1/2) coming from the cos factor; `count` distinct values.
// Throws std::invalid_argument when the branch is absent (m = 2, nu = 0).
std::vector<UnperturbedZero> cos_branch_zeros(int nu, const ProblemConfig& cfg, int count);

// Zeros of v_{0,j}: xi_n = eta_n^2. eta is imaginary when xi < 0 (H_j < -1, n = 1).
struct VZeros {
  std::vector<double> xi;
  std::vector<cplx> eta;
};

VZeros zeros_of_v(int j, const ProblemConfig& cfg, int N);

}  // namespace delaygraph
