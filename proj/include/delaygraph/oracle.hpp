#pragma once

#include <Eigen/Dense>
#include <vector>

#include "delaygraph/potential.hpp"

namespace delaygraph::oracle {

inline constexpr int kRefine = 4;

// Q_{nu,j}(x) and its x-derivative by direct quadrature of the defining integral
cplx eval_Q_quadrature(int j, int nu, double x, const SpectralParam& s, const PotentialSet& q,
                       int refine = kRefine);
cplx eval_Qx_quadrature(int j, int nu, double x, const SpectralParam& s, const PotentialSet& q,
                        int refine = kRefine);
cplx eval_VQ_quadrature(int j, int nu, const SpectralParam& s, const PotentialSet& q,
                        int refine = kRefine);

// Delta_nu assembled from quadrature values of V_j(Q)
cplx eval_delta_quadrature(int nu, const SpectralParam& s, const PotentialSet& q,
                           int refine = kRefine);

// y_1 = C_{nu,1} S_nu,  y_j = C_{0,j} S_0 + C_{1,j} S_1 + C_{nu,1} Q_{nu,j}
struct GeneralSolution {
  int nu = 0;
  std::vector<cplx> coeff;  // [C_{nu,1}, C_{0,2}, C_{1,2}, ..., C_{0,m}, C_{1,m}]
  cplx y(int j, double x, const SpectralParam& s, const PotentialSet& q) const;
};

struct ResidualReport {
  double sigma_min = 0.0;
  double sigma_max = 0.0;
  std::vector<double> singular_values;  // ascending
  GeneralSolution null_solution;        // right singular vector of sigma_min
  double relative() const { return sigma_min / sigma_max; }
};

// matching + boundary system for the general solution, rows equilibrated
Eigen::MatrixXcd residual_matrix(const SpectralParam& s, const PotentialSet& q, int nu,
                                 int refine = kRefine);
ResidualReport residual_check(const SpectralParam& s, const PotentialSet& q, int nu,
                              int refine = kRefine);

// Gram matrix of s_n = n^{1-nu} S_nu(x, xi_n) on [0,1] by dense Simpson quadrature
Eigen::MatrixXd gram_bruteforce(int j, int nu, int N, const ProblemConfig& cfg, int points = 8193);

}  // namespace delaygraph::oracle
