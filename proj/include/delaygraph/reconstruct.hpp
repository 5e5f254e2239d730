#pragma once

#include <Eigen/Dense>
#include <vector>

#include "delaygraph/grid.hpp"
#include "delaygraph/zeros.hpp"

namespace delaygraph {

struct OmegaFit {
  double omega = 0.0;
  int used = 0;            // admissible indices in the regression
  double residual = 0.0;   // weighted rms of r_n - omega sin(eta_n (2-a))
};

OmegaFit estimate_omega(int j, const std::vector<double>& beta0, const std::vector<cplx>& eta,
                        const ProblemConfig& cfg);

// closed-form Gram matrix of s_n = n^{1-nu} S_nu(x, xi_n) on [0,1]
Eigen::MatrixXd gram_closed_form(int nu, const std::vector<double>& xi);
double condition_number(const Eigen::MatrixXd& G);

enum class UMethod {
  smooth_fit,       // Legendre trial space fitted in the Gram metric
  gram_projection,  // u = sum c_n s_n with G c = m
};

struct URecovery {
  GridFunction u;
  double gram_condition = 0.0;
  double residual = 0.0;  // relative misfit in the Gram metric
  int trial_dim = 0;
};

struct URecoveryOptions {
  UMethod method = UMethod::smooth_fit;
  int trial_dim = 0;  // 0: max(4, N/4)
  int grid_points = 1025;
  double max_condition = 1e8;
};

URecovery recover_u(int j, int nu, const std::vector<double>& beta, double omega, const VZeros& zeros,
                    const ProblemConfig& cfg, int N, const URecoveryOptions& opt = {});

GridFunction recover_p(int j, const GridFunction& u0, const GridFunction& u1, const ProblemConfig& cfg);
GridFunction recover_q(int j, const GridFunction& p, const ProblemConfig& cfg);
// resolvent formula with an explicit H
GridFunction q_from_p(const GridFunction& p, double H);

// Gauss-Legendre nodes and weights on [lo, hi]
void gauss_legendre(int n, double lo, double hi, std::vector<double>& x, std::vector<double>& w);

}  // namespace delaygraph
