#include "delaygraph/oracle.hpp"

#include <cmath>

#include "delaygraph/entire.hpp"
#include "delaygraph/zeros.hpp"

namespace delaygraph::oracle {

namespace {

// Simpson over [a-1, x] of kernel(x - t) q_j(t) S_nu(t - a + 1)
template <class K>
cplx q_integral(int j, int nu, double x, const SpectralParam& s, const PotentialSet& q, int refine,
                K kernel) {
  const double lo = q.cfg.a - 1.0;
  if (x <= lo) return 0.0;
  const double h_prod = (1.0 - lo) / (q.grid_points() - 1);
  int n = static_cast<int>(std::ceil((x - lo) / (h_prod / refine)));
  n += n % 2;
  n = std::max(n, 2);
  const double h = (x - lo) / n;
  cplx sum = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double t = i == n ? x : lo + i * h;
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    sum += w * kernel(x - t) * q.value(j, t) * eval_S(nu, t - lo, s);
  }
  return sum * h / 3.0;
}

}  // namespace

cplx eval_Q_quadrature(int j, int nu, double x, const SpectralParam& s, const PotentialSet& q,
                       int refine) {
  return q_integral(j, nu, x, s, q, refine, [&](double d) { return eval_S(0, d, s); });
}

cplx eval_Qx_quadrature(int j, int nu, double x, const SpectralParam& s, const PotentialSet& q,
                        int refine) {
  return q_integral(j, nu, x, s, q, refine, [&](double d) { return eval_S(1, d, s); });
}

cplx eval_VQ_quadrature(int j, int nu, const SpectralParam& s, const PotentialSet& q, int refine) {
  return eval_Qx_quadrature(j, nu, 1.0, s, q, refine) +
         q.cfg.H_of(j) * eval_Q_quadrature(j, nu, 1.0, s, q, refine);
}

cplx eval_delta_quadrature(int nu, const SpectralParam& s, const PotentialSet& q, int refine) {
  const ProblemConfig& cfg = q.cfg;
  cplx sum = eval_delta0(nu, s, cfg);
  for (int j = 2; j <= cfg.m; ++j) {
    cplx prod = 1.0;
    for (int l = 2; l <= cfg.m; ++l)
      if (l != j) prod *= eval_v(l, 0, s, cfg);
    sum += eval_VQ_quadrature(j, nu, s, q, refine) * prod;
  }
  return sum;
}

cplx GeneralSolution::y(int j, double x, const SpectralParam& s, const PotentialSet& q) const {
  if (j == 1) return coeff[0] * eval_S(nu, x, s);
  const std::size_t k = static_cast<std::size_t>(2 * (j - 2) + 1);
  return coeff[k] * eval_S(0, x, s) + coeff[k + 1] * eval_S(1, x, s) +
         coeff[0] * eval_Q_quadrature(j, nu, x, s, q);
}

Eigen::MatrixXcd residual_matrix(const SpectralParam& s, const PotentialSet& q, int nu, int refine) {
  const ProblemConfig& cfg = q.cfg;
  const int m = cfg.m, dim = 2 * m - 1;
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(dim, dim);
  const cplx S1 = eval_S(nu, 1.0, s), dS1 = eval_S_x(nu, 1.0, s);
  int row = 0;
  // continuity at the internal vertex: y_1(1) = y_j(0)
  for (int j = 2; j <= m; ++j, ++row) {
    A(row, 0) = S1;
    A(row, 2 * (j - 2) + 2) = -1.0;
  }
  // Kirchhoff: y_1'(1) = sum_j y_j'(0)
  A(row, 0) = dS1;
  for (int j = 2; j <= m; ++j) A(row, 2 * (j - 2) + 1) = -1.0;
  ++row;
  // Robin conditions at the pendant vertices
  for (int j = 2; j <= m; ++j, ++row) {
    A(row, 0) = eval_VQ_quadrature(j, nu, s, q, refine);
    A(row, 2 * (j - 2) + 1) = eval_v(j, 0, s, cfg);
    A(row, 2 * (j - 2) + 2) = eval_v(j, 1, s, cfg);
  }
  for (int r = 0; r < dim; ++r) {
    const double mx = A.row(r).cwiseAbs().maxCoeff();
    if (mx > 0.0) A.row(r) /= mx;
  }
  return A;
}

ResidualReport residual_check(const SpectralParam& s, const PotentialSet& q, int nu, int refine) {
  const Eigen::MatrixXcd A = residual_matrix(s, q, nu, refine);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();  // descending
  ResidualReport r;
  const int n = static_cast<int>(sv.size());
  for (int i = n - 1; i >= 0; --i) r.singular_values.push_back(sv(i));
  r.sigma_min = sv(n - 1);
  r.sigma_max = sv(0);
  r.null_solution.nu = nu;
  const Eigen::VectorXcd v = svd.matrixV().col(n - 1);
  r.null_solution.coeff.assign(v.data(), v.data() + v.size());
  return r;
}

Eigen::MatrixXd gram_bruteforce(int j, int nu, int N, const ProblemConfig& cfg, int points) {
  if (points % 2 == 0) ++points;
  const VZeros z = zeros_of_v(j, cfg, N);
  const double h = 1.0 / (points - 1);
  Eigen::MatrixXd basis(N, points);
  for (int n = 0; n < N; ++n) {
    const SpectralParam s(z.xi[n]);
    const double c = nu == 0 ? static_cast<double>(n + 1) : 1.0;
    for (int i = 0; i < points; ++i) basis(n, i) = c * eval_S(nu, i * h, s).real();
  }
  Eigen::VectorXd w(points);
  for (int i = 0; i < points; ++i)
    w(i) = h / 3.0 * ((i == 0 || i == points - 1) ? 1.0 : (i % 2 ? 4.0 : 2.0));
  return basis * w.asDiagonal() * basis.transpose();
}

}  // namespace delaygraph::oracle
