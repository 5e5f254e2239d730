#include <cmath>
#include <numbers>
#include <random>

#include "delaygraph/characteristic.hpp"
#include "delaygraph/entire.hpp"
#include "delaygraph/errors.hpp"
#include "delaygraph/inverse.hpp"
#include "delaygraph/oracle.hpp"
#include "doctest.h"

using namespace delaygraph;
using std::numbers::pi;

namespace {

ProblemConfig make_cfg(int m, double a, std::vector<double> H) {
  ProblemConfig c;
  c.m = m;
  c.a = a;
  c.H = std::move(H);
  return c;
}

struct Data {
  PotentialSet q;
  EdgeTransforms t;
  Spectrum s0, s1;
};

Data forward(const ProblemConfig& cfg, std::vector<RealFn> fns, int K, int points = kDefaultGridPoints) {
  Data d{PotentialSet::from_functions(cfg, fns, points), {}, {}, {}};
  d.t = edge_transforms_from_q(d.q);
  d.s0 = compute_spectrum(0, d.t, K);
  d.s1 = compute_spectrum(1, d.t, K);
  return d;
}

std::vector<cplx> real_list(const std::vector<double>& v) { return {v.begin(), v.end()}; }

double norm_on(const GridFunction& f, double lo, double hi) {
  std::vector<double> g;
  for (int i = 0; i < f.size(); ++i)
    if (f.x(i) >= lo - 1e-12 && f.x(i) <= hi + 1e-12) g.push_back(f[i]);
  return GridFunction(lo, hi, g).l2_norm();
}

}  // namespace

TEST_CASE("reconstruct_delta: unperturbed spectrum reproduces Delta00") {
  auto cfg = make_cfg(3, 1.0, {1.0, -1.0});
  for (int nu = 0; nu < 2; ++nu) {
    std::vector<cplx> sp;
    for (const auto& z : zeros_of_delta00(nu, cfg, 30)) sp.emplace_back(z.lambda, 0.0);
    auto d = reconstruct_delta(nu, sp, cfg);
    for (double lam : {-10.0, 0.3, 7.0, 55.5, 300.0}) {
      const cplx ref = eval_delta00(nu, SpectralParam(lam), cfg);
      CHECK(std::abs(d(lam) - ref) <= 1e-12 * (1 + std::abs(ref)));
    }
    // at the given zeros, including the repeated ones
    for (int n = 0; n < 30; ++n) CHECK(std::abs(d(sp[n])) < 1e-10);
  }
}

TEST_CASE("reconstruct_delta: single perturbed entry") {
  auto cfg = make_cfg(2, 1.0, {0.5});
  std::vector<cplx> sp;
  for (const auto& z : zeros_of_delta00(0, cfg, 12)) sp.emplace_back(z.lambda, 0.0);
  const double l0 = sp[0].real();
  sp[0] += 1.0;
  auto d = reconstruct_delta(0, sp, cfg);
  CHECK(std::abs(d(l0 + 1.0)) < 1e-13);
  // removable singularity at the old zero: Delta00'(l0) * (l0 + 1 - l0)
  const double h = 1e-6;
  const cplx slope = (eval_delta00(0, SpectralParam(l0 + h), cfg) - eval_delta00(0, SpectralParam(l0 - h), cfg)) / (2 * h);
  CHECK(std::abs(d(l0) - slope * (-1.0)) < 1e-6);
  CHECK(std::abs(d(l0)) > 0.1);
}

TEST_CASE("reconstruct_delta: input errors") {
  auto cfg = make_cfg(2, 1.0, {0.5});
  std::vector<cplx> sp;
  for (const auto& z : zeros_of_delta00(1, cfg, 12)) sp.emplace_back(z.lambda, 0.0);
  CHECK_THROWS_WITH(reconstruct_delta(1, std::vector<cplx>(sp.begin(), sp.begin() + 4), cfg),
                    doctest::Contains("insufficient spectral data"));
  auto bad = sp;
  std::swap(bad[2], bad[3]);
  CHECK_THROWS(reconstruct_delta(1, bad, cfg));
  // last eigenvalue pushed onto the first tail zero
  const auto tail = zeros_of_delta00(1, cfg, 13);
  auto broken = sp;
  broken.back() = cplx(tail.back().lambda - 1e-3, 0.0);
  CHECK_THROWS_WITH(reconstruct_delta(1, broken, cfg), doctest::Contains("pairing broken"));
}

TEST_CASE("reconstruct_delta approximates Delta from forward data") {
  auto cfg = make_cfg(3, 1.0, {1.0, -1.0});
  auto d = forward(cfg, {[](double x) { return std::sin(pi * x); }, [](double x) { return x * (1 - x); }}, 120);
  for (int nu = 0; nu < 2; ++nu) {
    const auto& sp = nu ? d.s1 : d.s0;
    auto plain = reconstruct_delta(nu, sp.values, cfg);
    std::vector<double> omega{d.t.edge(2).omega, d.t.edge(3).omega};
    auto refined = reconstruct_delta(nu, sp.values, cfg, omega_model_reference(nu, cfg, omega, sp.size() + 1));
    double e_plain = 0.0, e_ref = 0.0;
    const double hi = sp.values[59].real();
    for (int i = 0; i <= 300; ++i) {
      const double lam = hi * i / 300.0;
      const cplx exact = eval_delta(nu, SpectralParam(lam), d.t);
      e_plain = std::max(e_plain, std::abs(plain(lam) - exact) / (1 + std::abs(exact)));
      e_ref = std::max(e_ref, std::abs(refined(lam) - exact) / (1 + std::abs(exact)));
    }
    CHECK(e_plain < 1e-3);
    CHECK(e_ref < 1e-5);
    CHECK(e_ref < e_plain);
  }
}

TEST_CASE("compute_moments examples") {
  // q = 0 with the q = 0 reference: Delta-hat equals Delta0, all moments vanish
  auto cfg = make_cfg(3, 1.0, {0.5, -0.25});
  auto z = edge_transforms_from_q(PotentialSet::zero(cfg));
  for (int nu = 0; nu < 2; ++nu) {
    auto sp = compute_spectrum(nu, z, 60);
    auto d = reconstruct_delta(nu, sp.values, cfg, omega_model_reference(nu, cfg, {0.0, 0.0}, 61));
    for (int j = 2; j <= 3; ++j) {
      auto row = compute_moments(j, nu, d, cfg, 16);
      for (int n = 0; n < 16; ++n) {
        CHECK(std::abs(row.gamma[n]) < 1e-10);
        CHECK(std::abs(row.beta[n]) < 1e-10);
        CHECK(row.alpha[n] != 0.0);
      }
    }
  }
  // m = 2: empty product
  auto c2 = make_cfg(2, 1.0, {0.5});
  std::vector<cplx> sp;
  for (const auto& v : zeros_of_delta00(0, c2, 40)) sp.emplace_back(v.lambda, 0.0);
  auto row = compute_moments(2, 0, reconstruct_delta(0, sp, c2), c2, 16);
  for (double a : row.alpha) CHECK(a == 1.0);
}

TEST_CASE("compute_moments: constant potential on an H = 0 edge") {
  const double c = 0.8;
  auto cfg = make_cfg(3, 1.0, {0.0, 1.0});
  const int N = 16;
  auto d = forward(cfg, {[c](double) { return c; }, [](double) { return 0.0; }}, required_spectrum_size(cfg, N));
  auto rep = invert_all(d.s0, d.s1, cfg, N);
  const auto& row = rep.moments.row(2, 0);
  for (int n = 1; n <= N; ++n) {
    const double eta = row.eta[n - 1].real();
    const double expect = n * c * std::sin(eta) / (2 * eta);
    CHECK(std::abs(row.beta[n - 1] - expect) < 1e-4);
  }
}

TEST_CASE("estimate_omega examples") {
  const double c = 1.0;
  SUBCASE("a = 1") {
    auto cfg = make_cfg(2, 1.0, {0.5});
    auto d = forward(cfg, {[c](double) { return c; }}, required_spectrum_size(cfg, 64));
    auto rep = invert_all(d.s0, d.s1, cfg, 64);
    CHECK(std::abs(rep.edge(2).omega.omega - c) < 0.02 * c);
  }
  SUBCASE("a = 1.5") {
    auto cfg = make_cfg(2, 1.5, {0.5});
    auto d = forward(cfg, {[c](double) { return c; }}, required_spectrum_size(cfg, 64));
    auto rep = invert_all(d.s0, d.s1, cfg, 64);
    CHECK(std::abs(rep.edge(2).omega.omega - c / 2) < 0.01 * c);
  }
  SUBCASE("q = 0 and input checks") {
    auto cfg = make_cfg(2, 1.0, {0.5});
    auto zr = zeros_of_v(2, cfg, 32);
    std::vector<double> beta(32, 0.0);
    CHECK(estimate_omega(2, beta, zr.eta, cfg).omega == 0.0);
    CHECK_THROWS_WITH(estimate_omega(2, std::vector<double>(8, 0.0), zr.eta, cfg),
                      doctest::Contains("insufficient spectral data"));
  }
}

TEST_CASE("gram_closed_form: H = 0, nu = 1 gives half the identity") {
  auto cfg = make_cfg(2, 1.0, {0.0});
  auto z = zeros_of_v(2, cfg, 24);
  auto G = gram_closed_form(1, z.xi);
  CHECK((G - 0.5 * Eigen::MatrixXd::Identity(24, 24)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(condition_number(G) == doctest::Approx(1.0));
}

TEST_CASE("recover_u examples") {
  auto cfg = make_cfg(2, 1.0, {0.0});
  const int N = 64;
  auto z = zeros_of_v(2, cfg, N);
  // zero moments give zero u
  for (auto m : {UMethod::smooth_fit, UMethod::gram_projection}) {
    URecoveryOptions o;
    o.method = m;
    auto r = recover_u(2, 0, std::vector<double>(N, 0.0), 0.0, z, cfg, N, o);
    CHECK(r.u.l2_norm() < 1e-6);
  }
  // constant potential, H = 0: u1 = c/2, u0 = 0
  const double c = 1.4;
  auto t = edge_transforms_from_q(PotentialSet::from_functions(cfg, {[c](double) { return c; }}));
  std::vector<double> b0(N), b1(N);
  for (int n = 1; n <= N; ++n) {
    b0[n - 1] = n * eval_VQ(2, 0, SpectralParam(z.xi[n - 1]), t).real();
    b1[n - 1] = eval_VQ(2, 1, SpectralParam(z.xi[n - 1]), t).real();
  }
  auto u0 = recover_u(2, 0, b0, c, z, cfg, N);
  auto u1 = recover_u(2, 1, b1, c, z, cfg, N);
  CHECK(u0.u.l2_norm() < 0.03 * c / 2);
  CHECK(l2_relative_error(u1.u, t.edge(2).u1) < 0.03);
  // the plain projection stays available; it converges slowly at the endpoint
  URecoveryOptions proj;
  proj.method = UMethod::gram_projection;
  auto u1p = recover_u(2, 1, b1, c, z, cfg, N, proj);
  CHECK(l2_relative_error(u1p.u, t.edge(2).u1) < 0.1);
  // condition guard
  URecoveryOptions strict;
  strict.max_condition = 0.5;
  CHECK_THROWS_WITH(recover_u(2, 1, b1, c, z, cfg, N, strict), doctest::Contains("basis near-degenerate"));
}

TEST_CASE("recover_p examples") {
  auto cfg = make_cfg(2, 1.0, {1.0});
  const double c = 0.7;
  auto u0 = GridFunction::zeros(0.0, 1.0, 1025);
  auto u1 = GridFunction::sample(0.0, 1.0, 1025, [c](double) { return c / 2; });
  auto p = recover_p(2, u0, u1, cfg);
  for (double v : p.values) CHECK(std::abs(v - c) < 1e-14);
  CHECK(recover_p(2, u0, u0, cfg).l2_norm() == 0.0);
  // forward-generated u from q = sin(pi x), H = 1
  auto t = edge_transforms_from_q(PotentialSet::from_functions(cfg, {[](double x) { return std::sin(pi * x); }}));
  auto pr = recover_p(2, t.edge(2).u0, t.edge(2).u1, cfg);
  CHECK(l2_relative_error(pr, t.edge(2).p) < 1e-10);
  // a = 1.5
  auto cfg2 = make_cfg(2, 1.5, {-0.5});
  auto t2 = edge_transforms_from_q(PotentialSet::from_functions(cfg2, {[](double x) { return std::exp(x) - x * x; }}));
  CHECK(l2_relative_error(recover_p(2, t2.edge(2).u0, t2.edge(2).u1, cfg2), t2.edge(2).p) < 1e-10);
}

TEST_CASE("recover_q examples") {
  auto cfg0 = make_cfg(2, 1.0, {0.0});
  auto p = GridFunction::sample(0.0, 1.0, 513, [](double x) { return std::cos(5 * x); });
  CHECK(l2_distance(recover_q(2, p, cfg0), p) == 0.0);
  const double c = 2.5, H = 1.5;
  auto pl = GridFunction::sample(0.0, 1.0, 513, [&](double x) { return c - 2 * H * c * (1 - x); });
  auto q = q_from_p(pl, H);
  for (double v : q.values) CHECK(std::abs(v - c) < 1e-11);
}

TEST_CASE("Volterra composition is the identity") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> U(-1.0, 1.0), HU(-2.0, 2.0);
  for (int trial = 0; trial < 10; ++trial) {
    const double a1 = U(rng), a2 = U(rng), k = 1 + 4 * std::abs(U(rng)), H = HU(rng);
    auto q = GridFunction::sample(0.0, 1.0, 513, [&](double x) { return a1 * std::sin(k * x) + a2 * std::exp(-x * x); });
    auto back = q_from_p(p_from_q(q, H), H);
    double err = 0.0;
    for (int i = 0; i < q.size(); ++i) err = std::max(err, std::abs(back[i] - q[i]));
    CHECK(err < 1e-10);
  }
}

TEST_CASE("invert_all: zero potential is a fixed point") {
  for (int m = 2; m <= 4; ++m) {
    std::vector<double> H{0.5, -1.0, 1.5};
    H.resize(static_cast<std::size_t>(m - 1));
    auto cfg = make_cfg(m, 1.0, H);
    const int N = 16;
    auto d = forward(cfg, std::vector<RealFn>(static_cast<std::size_t>(m - 1), [](double) { return 0.0; }),
                     required_spectrum_size(cfg, N));
    auto rep = invert_all(d.s0, d.s1, cfg, N);
    compare_with_truth(rep, d.q);
    for (const auto& e : rep.edges) CHECK(e.q.l2_norm() <= 1e-3);
  }
}

TEST_CASE("invert_all: roundtrip, moments and support") {
  auto cfg = make_cfg(3, 1.0, {1.0, -1.0});
  const int N = 32;
  // q_3 vanishes on [0, 0.5]
  auto d = forward(cfg, {[](double x) { return std::sin(pi * x); },
                         [](double x) { return x > 0.5 ? std::pow(x - 0.5, 3) * 8.0 : 0.0; }},
                   required_spectrum_size(cfg, N));
  auto rep = invert_all(d.s0, d.s1, cfg, N);
  compare_with_truth(rep, d.q);
  for (const auto& e : rep.edges) {
    CHECK(e.q_l2_error < 0.05);
    CHECK(std::abs(e.omega.omega - e.omega_true) < 1e-3);
    CHECK(e.q.x0 == doctest::Approx(0.0));
    CHECK(e.q.x1 == doctest::Approx(1.0));
  }
  // moment consistency against the forward closed form
  for (int j = 2; j <= 3; ++j)
    for (int nu = 0; nu < 2; ++nu) {
      const auto& row = rep.moments.row(j, nu);
      std::vector<double> truth;
      double scale = 0.0;
      for (int n = 1; n <= N / 2; ++n) {
        truth.push_back(std::pow(n, 1 - nu) * eval_VQ(j, nu, SpectralParam(row.xi[n - 1]), d.t).real());
        scale = std::max(scale, std::abs(truth.back()));
      }
      // some true moments vanish identically, so the error is taken relative to the row
      for (int n = 1; n <= N / 2; ++n) CHECK(std::abs(row.beta[n - 1] - truth[n - 1]) <= 1e-3 * scale);
    }
  // support: the recovered q_3 is at noise level where q_3 = 0
  const auto& e3 = rep.edge(3);
  CHECK(norm_on(e3.q, 0.0, 0.5) <= e3.q_l2_error * e3.q_l2_norm_true);
}

TEST_CASE("invert_all: distinct potentials give distinct inversions") {
  auto cfg = make_cfg(2, 1.0, {0.75});
  const int N = 32;
  auto A = forward(cfg, {[](double x) { return std::cos(pi * x); }}, required_spectrum_size(cfg, N));
  auto B = forward(cfg, {[](double x) { return std::cos(pi * x) + 0.5 * x; }}, required_spectrum_size(cfg, N));
  auto ra = invert_all(A.s0, A.s1, cfg, N);
  auto rb = invert_all(B.s0, B.s1, cfg, N);
  compare_with_truth(ra, A.q);
  compare_with_truth(rb, B.q);
  const double src = l2_distance(A.q.edge(2), B.q.edge(2));
  const double bound = std::max(ra.edge(2).q_l2_error * A.q.edge(2).l2_norm(), rb.edge(2).q_l2_error * B.q.edge(2).l2_norm());
  CHECK(ra.edge(2).q_l2_error < 0.05);
  CHECK(rb.edge(2).q_l2_error < 0.05);
  CHECK(l2_distance(ra.edge(2).q, rb.edge(2).q) >= src - 2 * bound);
}

TEST_CASE("invert_all: errors carry step labels") {
  auto cfg = make_cfg(2, 1.0, {0.5});
  std::vector<cplx> sp;
  for (const auto& z : zeros_of_delta00(0, cfg, 4)) sp.emplace_back(z.lambda, 0.0);
  try {
    invert_all(sp, sp, cfg, 4);
    FAIL("expected an error");
  } catch (const InverseError& e) {
    CHECK(std::string(e.what()).find("(i)") != std::string::npos);
    CHECK(std::string(e.what()).find("insufficient spectral data") != std::string::npos);
  }
  // spectra that stop short of the required reach
  std::vector<cplx> s0, s1;
  for (const auto& z : zeros_of_delta00(0, cfg, 40)) s0.emplace_back(z.lambda, 0.0);
  for (const auto& z : zeros_of_delta00(1, cfg, 40)) s1.emplace_back(z.lambda, 0.0);
  CHECK_THROWS_WITH(invert_all(s0, s1, cfg, 32), doctest::Contains("insufficient spectral data"));
  auto dup = make_cfg(3, 1.0, {0.5, 0.5});
  CHECK_THROWS_AS(invert_all(s0, s1, dup, 16), InverseError);
}
