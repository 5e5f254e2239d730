// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "delaygraph/characteristic.hpp"
#include "delaygraph/entire.hpp"
#include "delaygraph/inverse.hpp"
#include "delaygraph/oracle.hpp"

using namespace delaygraph;
using std::numbers::pi;

namespace {

// calibrated once (see README), frozen at twice the achieved value
constexpr double kAchievedQ2 = 4.974e-4;
constexpr double kAchievedQ3 = 4.387e-4;
constexpr double kAchievedOmegaRel = 1.41e-4;

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void run(int id, const char* what, double budget_s, const std::function<Outcome()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = fn();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = budget_s <= 0 || dt <= budget_s;
  const bool ok = o.pass && in_time;
  if (!ok) ++failures;
  std::printf("%s criterion %d: %s | %s | %.2f s", ok ? "PASS" : "FAIL", id, what, o.detail.c_str(), dt);
  if (budget_s > 0) std::printf(" (budget %.0f s)", budget_s);
  std::printf("\n");
  std::fflush(stdout);
}

template <class... A>
std::string fmt(const char* f, A... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

ProblemConfig make_cfg(int m, double a, std::vector<double> H) {
  ProblemConfig c;
  c.m = m;
  c.a = a;
  c.H = std::move(H);
  return c;
}

RealFn random_smooth(std::mt19937& rng) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  std::vector<double> c(9);
  for (double& v : c) v = U(rng);
  return [c](double x) {
    double s = c[0] + c[8] * std::exp(-x);
    for (int k = 1; k <= 3; ++k)
      s += (c[2 * k - 1] * std::sin(k * pi * x) + c[2 * k] * std::cos(k * pi * x)) / k;
    return s;
  };
}

PotentialSet smooth_case() {
  return PotentialSet::from_functions(make_cfg(3, 1.0, {1.0, -1.0}),
                                      {[](double x) { return std::sin(pi * x); },
                                       [](double x) { return x * (1.0 - x); }});
}

}  // namespace

int main() {
  std::mt19937 rng(31337);

  run(1, "eval_VQ closed form vs quadrature oracle, 200 lambda x 5 potentials, <= 1e-8", 60, [&] {
    double worst = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
      const double a = trial < 3 ? 1.0 : 1.0 + 0.2 * trial;
      auto q = PotentialSet::from_functions(make_cfg(3, a, {0.7, -1.3}), {random_smooth(rng), random_smooth(rng)});
      auto t = edge_transforms_from_q(q);
      for (int i = 0; i < 200; ++i) {
        const SpectralParam s(-50.0 + 2050.0 * i / 199.0);
        for (int j = 2; j <= 3; ++j)
          for (int nu = 0; nu < 2; ++nu)
            worst = std::max(worst, std::abs(eval_VQ(j, nu, s, t) - oracle::eval_VQ_quadrature(j, nu, s, q)));
      }
    }
    return Outcome{worst <= 1e-8, fmt("max abs diff %.3e", worst)};
  });

  run(2, "Delta00 vs factorizations, m = 2..5, 1000 lambda, <= 1e-12 relative", 5, [&] {
    double worst = 0.0;
    for (int m = 2; m <= 5; ++m) {
      auto c = make_cfg(m, 1.0, std::vector<double>(static_cast<std::size_t>(m - 1), 0.0));
      for (int i = 0; i < 1000; ++i) {
        const double lam = -100.0 + (1e4 + 100.0) * i / 999.0;
        for (int nu = 0; nu < 2; ++nu) {
          const cplx x = eval_delta00(nu, SpectralParam(lam), c);
          const cplx y = eval_delta00_factored(nu, SpectralParam(lam), m);
          const double scale = std::max(std::abs(x), std::abs(y));
          if (scale > 0) worst = std::max(worst, std::abs(x - y) / scale);
        }
      }
    }
    return Outcome{worst <= 1e-12, fmt("max relative diff %.3e (vs max(|a|,|b|))", worst)};
  });

  run(3, "first 64 zeros per spectrum certified (residual, count, oracle sigma_min)", 120, [&] {
    auto q = smooth_case();
    auto t = edge_transforms_from_q(q);
    double res = 0.0, sig = 0.0;
    bool counts = true, real = true;
    int total = 0;
    for (int nu = 0; nu < 2; ++nu) {
      Spectrum sp = compute_spectrum(nu, t, 64);
      total += sp.size();
      counts = counts && sp.size() == 64 && sp.window_count == sp.window_found;
      for (int n = 0; n < sp.size(); ++n) {
        res = std::max(res, sp.residuals[n] / sp.scales[n]);
        real = real && std::abs(sp.values[n].imag()) <= 1e-9;
        sig = std::max(sig, oracle::residual_check(SpectralParam(sp.values[n]), q, nu).relative());
      }
    }
    const bool ok = total == 128 && counts && real && res <= 1e-10 && sig <= 1e-8;
    return Outcome{ok, fmt("%d zeros, max residual/scale %.3e, max sigma_min/sigma_max %.3e, counts %s", total, res, sig,
                               counts ? "match" : "MISMATCH")};
  });

  run(4, "eta asymptotics decay exponent in [1.7, 2.3], H in {+-1, +-0.5}", 0, [&] {
    double lo = 1e9, hi = -1e9;
    for (double H : {1.0, -1.0, 0.5, -0.5}) {
      auto c = make_cfg(2, 1.0, {H});
      auto z = zeros_of_v(2, c, 80);
      double sx = 0, sy = 0, sxx = 0, sxy = 0;
      int k = 0;
      for (int n = 10; n <= 80; ++n) {
        const double r = std::abs(z.eta[n - 1].real() - pi * (n - 0.5) - H / (pi * n));
        const double x = std::log(n), y = std::log(r);
        sx += x, sy += y, sxx += x * x, sxy += x * y;
        ++k;
      }
      const double slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
      lo = std::min(lo, -slope);
      hi = std::max(hi, -slope);
    }
    return Outcome{lo >= 1.7 && hi <= 2.3, fmt("exponents in [%.4f, %.4f]", lo, hi)};
  });

  run(5, "product reconstruction, 200 eigenvalues, lambda in [0, lambda_100], <= 1e-4", 0, [&] {
    auto q = smooth_case();
    auto t = edge_transforms_from_q(q);
    double worst = 0.0, worst_ref = 0.0;
    for (int nu = 0; nu < 2; ++nu) {
      Spectrum sp = compute_spectrum(nu, t, 200);
      auto d = reconstruct_delta(nu, sp.values, q.cfg);
      auto dref = reconstruct_delta(nu, sp.values, q.cfg,
                                    omega_model_reference(nu, q.cfg, {t.edge(2).omega, t.edge(3).omega}, 201));
      const double top = sp.values[99].real();
      for (int i = 0; i <= 2000; ++i) {
        const double lam = top * i / 2000.0;
        const cplx exact = eval_delta(nu, SpectralParam(lam), t);
        worst = std::max(worst, std::abs(d(lam) - exact) / (1 + std::abs(exact)));
        worst_ref = std::max(worst_ref, std::abs(dref(lam) - exact) / (1 + std::abs(exact)));
      }
    }
    return Outcome{worst <= 1e-4, fmt("Delta00 tail %.3e; omega-model tail %.3e", worst, worst_ref)};
  });

  run(6, "Volterra composition on 512-point grids, H in [-2, 2], <= 1e-10", 0, [&] {
    std::uniform_real_distribution<double> HU(-2.0, 2.0);
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      const double H = HU(rng);
      auto p = GridFunction::sample(0.0, 1.0, 512, random_smooth(rng));
      auto back = p_from_q(q_from_p(p, H), H);
      auto back2 = q_from_p(p_from_q(p, H), H);
      for (int i = 0; i < p.size(); ++i)
        worst = std::max({worst, std::abs(back[i] - p[i]), std::abs(back2[i] - p[i])});
    }
    return Outcome{worst <= 1e-10, fmt("max abs diff %.3e", worst)};
  });

  run(7, "roundtrip: m=3 errors at N=64, monotone over N in {16,32,64}; m=2, a=1.5 omega", 0, [&] {
    const double thr2 = std::min(0.05, 2 * kAchievedQ2), thr3 = std::min(0.05, 2 * kAchievedQ3);
    const double thr_w = std::min(0.02, 2 * kAchievedOmegaRel);
    auto q = smooth_case();
    auto t = edge_transforms_from_q(q);
    const int K = required_spectrum_size(q.cfg, 64);
    auto s0 = compute_spectrum(0, t, K), s1 = compute_spectrum(1, t, K);
    std::vector<std::vector<double>> err(2);
    for (int N : {16, 32, 64}) {
      const int k = required_spectrum_size(q.cfg, N);
      auto rep = invert_all(std::vector<cplx>(s0.values.begin(), s0.values.begin() + k),
                            std::vector<cplx>(s1.values.begin(), s1.values.begin() + k), q.cfg, N);
      compare_with_truth(rep, q);
      err[0].push_back(rep.edge(2).q_l2_error);
      err[1].push_back(rep.edge(3).q_l2_error);
    }
    bool mono = true;
    for (const auto& e : err)
      for (int i = 1; i < 3; ++i) mono = mono && e[i] <= 1.1 * e[i - 1];
    auto c2 = make_cfg(2, 1.5, {0.5});
    auto q2 = PotentialSet::from_functions(c2, {[](double) { return 1.0; }});
    auto t2 = edge_transforms_from_q(q2);
    const int K2 = required_spectrum_size(c2, 64);
    auto rep2 = invert_all(compute_spectrum(0, t2, K2), compute_spectrum(1, t2, K2), c2, 64);
    const double w = rep2.edge(2).omega.omega, wrel = std::abs(w - 0.5) / 0.5;
    const bool ok = err[0][2] <= thr2 && err[1][2] <= thr3 && mono && wrel <= thr_w;
    const std::string d =
        fmt("q_2 L2 %.3e/%.3e/%.3e (limit %.3e); q_3 L2 %.3e/%.3e/%.3e (limit %.3e); monotone %s; ", err[0][0],
            err[0][1], err[0][2], thr2, err[1][0], err[1][1], err[1][2], thr3, mono ? "yes" : "NO") +
        fmt("omega_2 %.6f rel err %.3e (limit %.3e)", w, wrel, thr_w);
    return Outcome{ok, d};
  });

  run(8, "zero potential fixed point, m = 2, 3, 4, ||q|| <= 1e-3", 0, [&] {
    double worst = 0.0;
    for (int m = 2; m <= 4; ++m) {
      std::vector<double> H{0.5, -1.0, 1.5};
      H.resize(static_cast<std::size_t>(m - 1));
      auto c = make_cfg(m, 1.0, H);
      auto t = edge_transforms_from_q(PotentialSet::zero(c));
      const int N = 64, K = required_spectrum_size(c, N);
      auto rep = invert_all(compute_spectrum(0, t, K), compute_spectrum(1, t, K), c, N);
      for (const auto& e : rep.edges) worst = std::max(worst, e.q.l2_norm());
    }
    return Outcome{worst <= 1e-3, fmt("max ||q_j|| %.3e at N=64", worst)};
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
