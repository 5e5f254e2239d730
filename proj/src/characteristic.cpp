#include "delaygraph/characteristic.hpp"

#include <cmath>

#include "delaygraph/entire.hpp"

namespace delaygraph {

namespace {

struct FilonCoef {
  cplx alpha, beta, gamma;
};

FilonCoef filon_coef(cplx th) {
  if (std::abs(th) >= 1.0) {
    const cplx s = std::sin(th), c = std::cos(th), t3 = th * th * th;
    return {(th * th + th * s * c - 2.0 * s * s) / t3, 2.0 * (th * (1.0 + c * c) - 2.0 * s * c) / t3,
            4.0 * (s - th * c) / t3};
  }
  // Maclaurin series in theta
  const cplx t2 = th * th;
  FilonCoef r{0.0, 0.0, 0.0};
  double fact = 6.0;  // (2k+1)! at k = 1
  cplx pw = 1.0;      // theta^(2k-2)
  double four_k = 4.0;
  for (int k = 1; k <= 14; ++k) {
    const double sgn = (k % 2) ? 1.0 : -1.0;
    r.gamma += 4.0 * sgn * (2.0 * k) * pw / fact;
    r.beta += -sgn * four_k * (2.0 * k - 3.0) * pw / fact;
    // alpha term uses (2k+2)! and theta^(2k-1)
    const double fact2 = fact * (2.0 * k + 2.0);
    if (k >= 2) r.alpha += -sgn * four_k * (2.0 * k - 2.0) * pw * th / fact2;
    pw *= t2;
    fact = fact2 * (2.0 * k + 3.0);
    four_k *= 4.0;
  }
  return r;
}

}  // namespace

TrigMoments filon_moments(const GridFunction& u, cplx rho) {
  const int n = u.size();
  const double h = u.step();
  const cplx I(0.0, 1.0);
  const FilonCoef k = filon_coef(rho * h);
  // e^{+-i rho x} by recurrence, re-anchored every 64 steps
  const cplx wp = std::exp(I * rho * h), wm = std::exp(-I * rho * h);
  cplx ep = 1.0, em = 1.0;
  cplx ce = 0.0, co = 0.0, se = 0.0, so = 0.0;
  cplx c0 = 0.0, s0 = 0.0, cn = 0.0, sn = 0.0;
  for (int i = 0; i < n; ++i) {
    if (i % 64 == 0) {
      const cplx arg = I * rho * (u.x0 + i * h);
      ep = std::exp(arg);
      em = std::exp(-arg);
    }
    const cplx cs = 0.5 * (ep + em), sn_i = (ep - em) / (2.0 * I);
    const double f = u[i];
    if (i % 2 == 0) {
      ce += f * cs;
      se += f * sn_i;
    } else {
      co += f * cs;
      so += f * sn_i;
    }
    if (i == 0) {
      c0 = cs;
      s0 = sn_i;
    }
    if (i == n - 1) {
      cn = cs;
      sn = sn_i;
    }
    ep *= wp;
    em *= wm;
  }
  const double f0 = u[0], fn = u[n - 1];
  ce -= 0.5 * (fn * cn + f0 * c0);
  se -= 0.5 * (fn * sn + f0 * s0);
  TrigMoments r;
  r.c = h * (k.alpha * (fn * sn - f0 * s0) + k.beta * ce + k.gamma * co);
  r.s = h * (-k.alpha * (fn * cn - f0 * c0) + k.beta * se + k.gamma * so);
  return r;
}

cplx integrate_u_S(const GridFunction& u, int nu, const SpectralParam& s) {
  const cplx rho = s.rho();
  const double L = u.x1;
  if (std::abs(rho) * L < kSeriesThreshold) {
    const int n = u.size();
    const double h = u.step();
    cplx sum = 0.0;
    for (int i = 0; i < n; ++i) {
      const double w = (i == 0 || i == n - 1) ? 1.0 : (i % 2 ? 4.0 : 2.0);
      sum += w * u[i] * eval_S_series(nu, u.x(i), s.lambda());
    }
    return sum * h / 3.0;
  }
  const TrigMoments m = filon_moments(u, rho);
  return nu == 0 ? m.s / rho : m.c;
}

cplx eval_VQ(int j, int nu, const SpectralParam& s, const EdgeTransforms& t) {
  const EdgeTransform& e = t.edge(j);
  const double L = t.cfg.u_length();
  if (nu == 0)
    return 0.5 * e.omega * eval_S(0, L, s) + (e.u_zero ? 0.0 : integrate_u_S(e.u0, 0, s));
  return 0.5 * e.omega * eval_S(1, L, s) + e.H * e.omega * eval_S(0, L, s) +
         (e.u_zero ? 0.0 : integrate_u_S(e.u1, 1, s));
}

cplx eval_delta(int nu, const SpectralParam& s, const EdgeTransforms& t) {
  const ProblemConfig& cfg = t.cfg;
  const int n = cfg.m - 1;
  std::vector<cplx> v0(n);
  for (int k = 0; k < n; ++k) v0[k] = eval_v(k + 2, 0, s, cfg);
  std::vector<cplx> pre(n + 1, 1.0), suf(n + 1, 1.0);
  for (int k = 0; k < n; ++k) pre[k + 1] = pre[k] * v0[k];
  for (int k = n - 1; k >= 0; --k) suf[k] = suf[k + 1] * v0[k];
  cplx pert = 0.0;
  for (int k = 0; k < n; ++k) {
    const EdgeTransform& e = t.edges[k];
    if (e.vanishes) continue;
    pert += eval_VQ(k + 2, nu, s, t) * pre[k] * suf[k + 1];
  }
  return eval_delta0(nu, s, cfg) + pert;
}

}  // namespace delaygraph
