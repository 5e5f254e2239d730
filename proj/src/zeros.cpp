#include "delaygraph/zeros.hpp"

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "delaygraph/entire.hpp"

namespace delaygraph {

namespace {

constexpr double pi = std::numbers::pi;

void push(std::vector<UnperturbedZero>& out, double rho, int mult, int N) {
  for (int k = 0; k < mult && static_cast<int>(out.size()) < N; ++k)
    out.push_back({rho * rho, mult});
}

double sinc(double x) {
  if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

double tanhc(double x) {
  if (std::abs(x) < 1e-4) return 1.0 - x * x / 3.0;
  return std::tanh(x) / x;
}

// bracketing root solve to full double precision
template <class F>
double solve_bracket(F f, double lo, double hi) {
  double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0) == (fhi > 0)) throw std::runtime_error("zeros_of_v: bracket without sign change");
  std::uintmax_t iters = 200;
  auto tol = boost::math::tools::eps_tolerance<double>(52);
  auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, tol, iters);
  if (iters >= 200) throw std::runtime_error("zeros_of_v: refinement did not converge");
  return 0.5 * (r.first + r.second);
}

}  // namespace

std::vector<UnperturbedZero> cos_branch_zeros(int nu, const ProblemConfig& cfg, int count) {
  const int mult = nu == 0 ? cfg.m - 2 : cfg.m - 1;
  if (mult <= 0)
    throw std::invalid_argument("zeros_of_delta00: cos branch is absent for m = 2, nu = 0");
  std::vector<UnperturbedZero> out;
  for (int n = 1; n <= count; ++n) out.push_back({std::pow(pi * (n - 0.5), 2), mult});
  return out;
}

std::vector<UnperturbedZero> zeros_of_delta00(int nu, const ProblemConfig& cfg, int N) {
  if (N < 1) throw std::invalid_argument("zeros_of_delta00: N must be >= 1");
  const int m = cfg.m;
  std::vector<UnperturbedZero> out;
  out.reserve(N);
  if (nu == 0) {
    const double theta = std::atan(1.0 / std::sqrt(static_cast<double>(m - 1)));
    for (int n = 1; static_cast<int>(out.size()) < N; ++n) {
      push(out, theta + pi * (n - 1), 1, N);
      if (m > 2) push(out, pi * (n - 0.5), m - 2, N);
      push(out, pi * n - theta, 1, N);
    }
  } else {
    push(out, 0.0, 1, N);
    for (int n = 1; static_cast<int>(out.size()) < N; ++n) {
      push(out, pi * (n - 0.5), m - 1, N);
      push(out, pi * n, 1, N);
    }
  }
  return out;
}

VZeros zeros_of_v(int j, const ProblemConfig& cfg, int N) {
  const double H = cfg.H_of(j);
  VZeros z;
  z.xi.reserve(N);
  z.eta.reserve(N);
  // rho cos rho + H sin rho; same positive zeros as v_{0,j}(rho^2)
  auto g = [H](double r) { return r * std::cos(r) + H * std::sin(r); };
  for (int n = 1; n <= N; ++n) {
    double rho;
    if (H == 0.0) {
      rho = pi * (n - 0.5);
    } else if (H > 0.0) {
      rho = solve_bracket(g, pi * (n - 0.5), pi * n);
    } else if (n >= 2) {
      rho = solve_bracket(g, pi * (n - 1), pi * (n - 0.5));
    } else if (H > -1.0) {
      rho = solve_bracket([H](double r) { return std::cos(r) + H * sinc(r); }, 0.0, pi / 2);
    } else if (H == -1.0) {
      rho = 0.0;
    } else {
      // negative zero: cosh tau + H sinh(tau)/tau = 0
      const double tau =
          solve_bracket([H](double t) { return 1.0 + H * tanhc(t); }, 0.0, -H);
      z.xi.push_back(-tau * tau);
      z.eta.push_back(cplx(0.0, tau));
      continue;
    }
    z.xi.push_back(rho * rho);
    z.eta.push_back(cplx(rho, 0.0));
  }

  for (int n = 0; n < N; ++n) {
    const SpectralParam s(z.xi[n]);
    const double res = std::abs(eval_v(j, 0, s, cfg));
    // dv/dlambda = d/dlambda S_1(1) + H d/dlambda S_0(1)
    const double dv =
        std::abs(eval_S_dlambda(1, 1.0, s, 1) + H * eval_S_dlambda(0, 1.0, s, 1));
    const double scale = 1.0 + std::abs(H) * std::abs(eval_S(0, 1.0, s));
    if (res > 1e-12 * scale * (1.0 + std::abs(z.eta[n]))) {
      std::ostringstream os;
      os << "zeros_of_v: residual " << res << " at n=" << n + 1 << " exceeds tolerance";
      throw std::runtime_error(os.str());
    }
    if (!(dv > 1e-12 / (1.0 + std::abs(z.xi[n])))) {
      std::ostringstream os;
      os << "zeros_of_v: derivative vanishes at n=" << n + 1 << " (zero not simple)";
      throw std::runtime_error(os.str());
    }
    if (n > 0 && !(z.xi[n] - z.xi[n - 1] > 1e-9 * (1.0 + std::abs(z.xi[n])))) {
      std::ostringstream os;
      os << "zeros_of_v: zeros " << n << " and " << n + 1 << " collide";
      throw std::runtime_error(os.str());
    }
  }
  return z;
}

}  // namespace delaygraph
