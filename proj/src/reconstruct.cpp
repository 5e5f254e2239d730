#include "delaygraph/reconstruct.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "delaygraph/entire.hpp"

namespace delaygraph {

OmegaFit estimate_omega(int j, const std::vector<double>& beta0, const std::vector<cplx>& eta,
                        const ProblemConfig& cfg) {
  (void)j;
  const int N = static_cast<int>(beta0.size());
  if (N < 16 || static_cast<int>(eta.size()) < N)
    throw std::invalid_argument("estimate_omega: insufficient spectral data (need >= 16 moments)");
  const double L = cfg.u_length();
  double swr = 0.0, sww = 0.0;
  std::vector<int> used;
  for (int n = (N + 1) / 2; n <= N; ++n) {
    if (std::abs(std::sin(std::numbers::pi * (n - 0.5) * L)) < 0.3) continue;
    const double e = eta[n - 1].real();
    const double r = 2.0 * e * beta0[n - 1] / n;
    const double s = std::sin(e * L);
    const double w = static_cast<double>(n) * n;
    swr += w * r * s;
    sww += w * s * s;
    used.push_back(n);
  }
  if (used.size() < 8)
    throw std::invalid_argument("estimate_omega: fewer than 8 admissible indices; increase N");
  OmegaFit f;
  f.omega = swr / sww;
  f.used = static_cast<int>(used.size());
  double acc = 0.0, wsum = 0.0;
  for (int n : used) {
    const double e = eta[n - 1].real();
    const double d = 2.0 * e * beta0[n - 1] / n - f.omega * std::sin(e * L);
    acc += static_cast<double>(n) * n * d * d;
    wsum += static_cast<double>(n) * n;
  }
  f.residual = std::sqrt(acc / wsum);
  return f;
}

Eigen::MatrixXd gram_closed_form(int nu, const std::vector<double>& xi) {
  const int N = static_cast<int>(xi.size());
  std::vector<double> S(N), dS(N), c(N);
  for (int n = 0; n < N; ++n) {
    const SpectralParam s(xi[n]);
    S[n] = eval_S(nu, 1.0, s).real();
    dS[n] = eval_S_x(nu, 1.0, s).real();
    c[n] = nu == 0 ? n + 1.0 : 1.0;
  }
  Eigen::MatrixXd G(N, N);
  for (int k = 0; k < N; ++k) {
    const SpectralParam s(xi[k]);
    // d/dlambda of S_nu(1) and of S_nu'(1)
    const double dl_S = eval_S_dlambda(nu, 1.0, s, 1).real();
    const double dl_dS = nu == 0 ? eval_S_dlambda(1, 1.0, s, 1).real()
                                 : (-eval_S(0, 1.0, s) - s.lambda() * eval_S_dlambda(0, 1.0, s, 1)).real();
    G(k, k) = c[k] * c[k] * (dS[k] * dl_S - S[k] * dl_dS);
    for (int n = k + 1; n < N; ++n) {
      const double v = (dS[k] * S[n] - S[k] * dS[n]) / (xi[n] - xi[k]);
      G(k, n) = G(n, k) = c[k] * c[n] * v;
    }
  }
  return G;
}

double condition_number(const Eigen::MatrixXd& G) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  if (ev(0) <= 0.0) return INFINITY;
  return ev(ev.size() - 1) / ev(0);
}

void gauss_legendre(int n, double lo, double hi, std::vector<double>& x, std::vector<double>& w) {
  // Golub-Welsch on the Jacobi matrix
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n), sub(std::max(n - 1, 1));
  for (int k = 1; k < n; ++k) sub(k - 1) = k / std::sqrt(4.0 * k * k - 1.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub.head(std::max(n - 1, 0)), Eigen::ComputeEigenvectors);
  x.resize(n);
  w.resize(n);
  const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
  for (int k = 0; k < n; ++k) {
    const double v0 = es.eigenvectors()(0, k);
    x[k] = mid + half * es.eigenvalues()(k);
    w[k] = half * 2.0 * v0 * v0;
  }
}

namespace {

// Legendre P_0..P_{M-1} at t in [-1,1]
void legendre_row(double t, int M, double* out) {
  out[0] = 1.0;
  if (M > 1) out[1] = t;
  for (int i = 2; i < M; ++i) out[i] = ((2.0 * i - 1.0) * t * out[i - 1] - (i - 1.0) * out[i - 2]) / i;
}

}  // namespace

URecovery recover_u(int j, int nu, const std::vector<double>& beta, double omega, const VZeros& zeros,
                    const ProblemConfig& cfg, int N, const URecoveryOptions& opt) {
  if (static_cast<int>(beta.size()) < N || static_cast<int>(zeros.xi.size()) < N)
    throw std::invalid_argument("recover_u: moment row shorter than N");
  const double L = cfg.u_length();
  const double H = cfg.H_of(j);
  std::vector<double> xi(zeros.xi.begin(), zeros.xi.begin() + N);
  auto basis = [&](int n, double x) {
    const double c = nu == 0 ? n + 1.0 : 1.0;
    return c * eval_S(nu, x, SpectralParam(xi[n])).real();
  };

  Eigen::VectorXd target(N);
  for (int n = 0; n < N; ++n) {
    double t = beta[n] - 0.5 * omega * basis(n, L);
    if (nu == 1) t -= H * omega * eval_S(0, L, SpectralParam(xi[n])).real();
    target(n) = t;
  }

  URecovery out;
  const Eigen::MatrixXd G = gram_closed_form(nu, xi);
  out.gram_condition = condition_number(G);
  if (!(out.gram_condition <= opt.max_condition)) {
    std::ostringstream os;
    os << "recover_u: basis near-degenerate; reduce N or check eta asymptotics (condition "
       << out.gram_condition << ")";
    throw std::runtime_error(os.str());
  }
  const Eigen::LLT<Eigen::MatrixXd> llt(G);
  const int P = opt.grid_points;
  std::vector<double> vals(static_cast<std::size_t>(P), 0.0);
  const double h = L / (P - 1);

  if (opt.method == UMethod::gram_projection) {
    const Eigen::VectorXd c = llt.solve(target);
    for (int i = 0; i < P; ++i)
      for (int n = 0; n < N; ++n) vals[i] += c(n) * basis(n, i * h);
    out.trial_dim = N;
    out.residual = (G * c - target).norm() / std::max(target.norm(), 1e-300);
  } else {
    const int M = opt.trial_dim > 0 ? opt.trial_dim : std::max(4, N / 4);
    double eta_max = 0.0;
    for (int n = 0; n < N; ++n) eta_max = std::max(eta_max, std::abs(zeros.eta[n]));
    const int ng = M + static_cast<int>(std::ceil(eta_max * L)) + 32;
    std::vector<double> gx, gw;
    gauss_legendre(ng, 0.0, L, gx, gw);
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(N, M);
    std::vector<double> leg(static_cast<std::size_t>(M));
    for (int g = 0; g < ng; ++g) {
      legendre_row(2.0 * gx[g] / L - 1.0, M, leg.data());
      for (int n = 0; n < N; ++n) {
        const double b = gw[g] * basis(n, gx[g]);
        for (int i = 0; i < M; ++i) A(n, i) += b * leg[i];
      }
    }
    const Eigen::MatrixXd B = llt.matrixL().solve(A);
    const Eigen::VectorXd y = llt.matrixL().solve(target);
    const Eigen::VectorXd d = B.colPivHouseholderQr().solve(y);
    for (int i = 0; i < P; ++i) {
      legendre_row(2.0 * i * h / L - 1.0, M, leg.data());
      for (int k = 0; k < M; ++k) vals[i] += d(k) * leg[k];
    }
    out.trial_dim = M;
    out.residual = (B * d - y).norm() / std::max(y.norm(), 1e-300);
  }
  out.u = GridFunction(0.0, L, std::move(vals));
  return out;
}

GridFunction recover_p(int j, const GridFunction& u0, const GridFunction& u1, const ProblemConfig& cfg) {
  (void)j;
  if (u0.size() != u1.size()) throw std::invalid_argument("recover_p: u grids differ");
  const double a = cfg.a;
  const int P = u0.size();
  const double lo = a - 1.0, h = (1.0 - lo) / (P - 1);
  std::vector<double> p(static_cast<std::size_t>(P));
  for (int i = 0; i < P; ++i) {
    const double x = i == P - 1 ? 1.0 : lo + i * h;
    const double left = 2.0 * (u1.linear(a - 2.0 * x) - u0.linear(a - 2.0 * x));
    const double right = 2.0 * (u1.linear(2.0 * x - a) + u0.linear(2.0 * x - a));
    if (P % 2 == 1 && i == (P - 1) / 2)
      p[i] = 0.5 * (left + right);
    else
      p[i] = x < 0.5 * a ? left : right;
  }
  return GridFunction(lo, 1.0, std::move(p));
}

GridFunction q_from_p(const GridFunction& p, double H) {
  const int P = p.size();
  std::vector<double> g(static_cast<std::size_t>(P));
  for (int i = 0; i < P; ++i) g[i] = std::exp(2.0 * H * (p.x(i) - 1.0)) * p[i];
  const auto tail = cumulative_from_right(g, p.step());
  std::vector<double> q(static_cast<std::size_t>(P));
  for (int i = 0; i < P; ++i) q[i] = p[i] + 2.0 * H * std::exp(2.0 * H * (1.0 - p.x(i))) * tail[i];
  return GridFunction(p.x0, p.x1, std::move(q));
}

GridFunction recover_q(int j, const GridFunction& p, const ProblemConfig& cfg) {
  return q_from_p(p, cfg.H_of(j));
}

}  // namespace delaygraph
