#include "delaygraph/entire.hpp"

#include <cmath>
#include <sstream>

namespace delaygraph {

void ProblemConfig::validate() const {
  if (m < 2) throw std::invalid_argument("config: m must be >= 2");
  if (!(a >= 1.0 && a < 2.0)) throw std::invalid_argument("config: a must lie in [1, 2)");
  if (static_cast<int>(H.size()) != m - 1) {
    std::ostringstream os;
    os << "config: expected " << m - 1 << " Robin coefficients, got " << H.size();
    throw std::invalid_argument(os.str());
  }
  for (double h : H)
    if (!std::isfinite(h)) throw std::invalid_argument("config: H values must be finite");
  for (std::size_t i = 0; i < H.size(); ++i)
    for (std::size_t k = i + 1; k < H.size(); ++k)
      if (H[i] == H[k])
        throw std::invalid_argument(
            "config: H values must be pairwise distinct (uniqueness of the inverse problem "
            "requires known distinct Robin coefficients)");
}

namespace {

constexpr int kSeriesTerms = 16;

cplx ipow(cplx z, int k) {
  cplx r = 1.0;
  for (int i = 0; i < k; ++i) r *= z;
  return r;
}

}  // namespace

cplx eval_S_series(int nu, double x, cplx lambda) {
  const cplx t = -lambda * x * x;
  cplx term = 1.0, sum = 0.0;
  if (nu == 0) {
    // x * sum t^k / (2k+1)!
    for (int k = 0; k < kSeriesTerms; ++k) {
      sum += term;
      term *= t / static_cast<double>((2 * k + 2) * (2 * k + 3));
    }
    return x * sum;
  }
  for (int k = 0; k < kSeriesTerms; ++k) {
    sum += term;
    term *= t / static_cast<double>((2 * k + 1) * (2 * k + 2));
  }
  return sum;
}

cplx eval_S_trig(int nu, double x, cplx rho) {
  if (nu == 0) {
    if (rho == cplx(0.0)) return x;
    return std::sin(rho * x) / rho;
  }
  return std::cos(rho * x);
}

cplx eval_S(int nu, double x, const SpectralParam& s) {
  if (std::abs(s.rho() * x) < kSeriesThreshold) return eval_S_series(nu, x, s.lambda());
  return eval_S_trig(nu, x, s.rho());
}

cplx eval_S_x(int nu, double x, const SpectralParam& s) {
  if (nu == 0) return eval_S(1, x, s);
  return -s.lambda() * eval_S(0, x, s);
}

cplx eval_S_dlambda(int nu, double x, const SpectralParam& s, int order) {
  if (order == 0) return eval_S(nu, x, s);
  if (order != 1) throw std::invalid_argument("eval_S_dlambda: only orders 0 and 1 are supported");
  if (nu == 1) return -0.5 * x * eval_S(0, x, s);
  const cplx rho = s.rho();
  if (std::abs(rho * x) < kSeriesThreshold) {
    // x^3 * sum_{k>=1} (-1)^k k t^{k-1} / (2k+1)!,  t = lambda x^2
    const cplx t = s.lambda() * x * x;
    cplx tk = 1.0, sum = 0.0;
    double fact = 6.0;
    for (int k = 1; k < kSeriesTerms; ++k) {
      sum += ((k % 2) ? -1.0 : 1.0) * static_cast<double>(k) * tk / fact;
      tk *= t;
      fact *= static_cast<double>((2 * k + 2) * (2 * k + 3));
    }
    return x * x * x * sum;
  }
  return (x * std::cos(rho * x) - std::sin(rho * x) / rho) / (2.0 * s.lambda());
}

cplx eval_v(int j, int nu, const SpectralParam& s, const ProblemConfig& cfg) {
  if (j < 2 || j > cfg.m) throw std::out_of_range("eval_v: edge index out of range");
  return eval_S_x(nu, 1.0, s) + cfg.H_of(j) * eval_S(nu, 1.0, s);
}

cplx eval_delta00(int nu, const SpectralParam& s, const ProblemConfig& cfg) {
  const int m = cfg.m;
  const cplx c = eval_S(1, 1.0, s);
  const cplx rho_sin = s.lambda() * eval_S(0, 1.0, s);
  return eval_S_x(nu, 1.0, s) * ipow(c, m - 1) +
         static_cast<double>(1 - m) * eval_S(nu, 1.0, s) * ipow(c, m - 2) * rho_sin;
}

cplx eval_delta00_factored(int nu, const SpectralParam& s, int m) {
  const cplx rho = s.rho();
  const cplx c = std::cos(rho), sn = std::sin(rho);
  if (nu == 0) return ipow(c, m - 2) * (c * c - static_cast<double>(m - 1) * sn * sn);
  return -static_cast<double>(m) * rho * sn * ipow(c, m - 1);
}

cplx eval_delta0(int nu, const SpectralParam& s, const ProblemConfig& cfg) {
  const int n = cfg.m - 1;
  std::vector<cplx> v0(n), v1(n);
  for (int k = 0; k < n; ++k) {
    v0[k] = eval_v(k + 2, 0, s, cfg);
    v1[k] = eval_v(k + 2, 1, s, cfg);
  }
  // prefix/suffix products give prod_{l != j} v0_l without division
  std::vector<cplx> pre(n + 1, 1.0), suf(n + 1, 1.0);
  for (int k = 0; k < n; ++k) pre[k + 1] = pre[k] * v0[k];
  for (int k = n - 1; k >= 0; --k) suf[k] = suf[k + 1] * v0[k];
  cplx sum = 0.0;
  for (int k = 0; k < n; ++k) sum += v1[k] * pre[k] * suf[k + 1];
  return eval_S_x(nu, 1.0, s) * pre[n] + eval_S(nu, 1.0, s) * sum;
}

}  // namespace delaygraph
