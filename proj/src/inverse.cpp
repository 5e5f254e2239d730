#include "delaygraph/inverse.hpp"

#include <cmath>
#include <future>
#include <sstream>

#include "delaygraph/errors.hpp"
#include "delaygraph/product.hpp"

namespace delaygraph {

namespace {

template <class Fn>
auto step(const char* label, Fn fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const InverseError&) {
    throw;
  } catch (const std::exception& e) {
    throw InverseError(label, e.what());
  }
}

}  // namespace

int required_spectrum_size(const ProblemConfig& cfg, int N, double factor) {
  return static_cast<int>(std::ceil(factor * cfg.m * N)) + 2;
}

ReconstructionReport invert_all(const std::vector<cplx>& spec0, const std::vector<cplx>& spec1,
                                const ProblemConfig& cfg, int N, const InverseOptions& opt) {
  step("i", [&] { cfg.validate(); return 0; });
  ReconstructionReport rep;
  rep.cfg = cfg;
  rep.N = N;
  rep.K0 = static_cast<int>(spec0.size());
  rep.K1 = static_cast<int>(spec1.size());
  rep.options = opt;
  if (N < 16 || rep.K0 < N || rep.K1 < N) {
    std::ostringstream os;
    os << "insufficient spectral data: N=" << N << " (minimum 16), spectra carry " << rep.K0 << " and "
       << rep.K1 << " eigenvalues";
    throw InverseError("i", os.str());
  }

  std::vector<VZeros> zeros;
  double eta_max = 0.0;
  step("ii", [&] {
    for (int j = 2; j <= cfg.m; ++j) {
      zeros.push_back(zeros_of_v(j, cfg, N));
      eta_max = std::max(eta_max, std::abs(zeros.back().eta[N - 1]));
    }
    return 0;
  });
  const double need = std::pow(opt.reach_factor * eta_max, 2);
  for (const auto* sp : {&spec0, &spec1}) {
    if (sp->back().real() < need) {
      std::ostringstream os;
      os << "insufficient spectral data: spectra must extend to lambda >= " << need << " (rho >= "
         << opt.reach_factor << " * eta_N), got " << sp->back().real()
         << "; supply about " << required_spectrum_size(cfg, N) << " eigenvalues";
      throw InverseError("i", os.str());
    }
  }

  const int K0 = rep.K0, K1 = rep.K1;
  auto product_pair = [&](const std::vector<double>* omega) {
    return step("i", [&] {
      if (!omega) return std::pair{reconstruct_delta(0, spec0, cfg), reconstruct_delta(1, spec1, cfg)};
      return std::pair{reconstruct_delta(0, spec0, cfg, omega_model_reference(0, cfg, *omega, K0 + 1)),
                       reconstruct_delta(1, spec1, cfg, omega_model_reference(1, cfg, *omega, K1 + 1))};
    });
  };
  auto omega_pass = [&](const ProductCharFn& d0) {
    std::vector<double> w;
    for (int j = 2; j <= cfg.m; ++j) {
      const MomentRow r = step("iii", [&] { return compute_moments(j, 0, d0, cfg, zeros[j - 2], N); });
      w.push_back(step("iv", [&] { return estimate_omega(j, r.beta, r.eta, cfg); }).omega);
    }
    return w;
  };

  std::vector<double> omega_tail(static_cast<std::size_t>(cfg.m - 1), 0.0);
  auto dd = product_pair(opt.tail == TailModel::unperturbed ? nullptr : &omega_tail);
  if (opt.tail == TailModel::omega_refined) {
    for (int pass = 0; pass < std::max(1, opt.refine_passes); ++pass) {
      omega_tail = omega_pass(dd.first);
      dd = product_pair(&omega_tail);
    }
  }
  rep.tail_omega = omega_tail;
  const ProductCharFn& d0 = dd.first;
  const ProductCharFn& d1 = dd.second;

  rep.moments.N = N;
  rep.moments.rows.resize(static_cast<std::size_t>(cfg.m - 1));
  rep.edges.resize(static_cast<std::size_t>(cfg.m - 1));

  auto edge_job = [&](int j) {
    const VZeros& z = zeros[j - 2];
    std::vector<MomentRow> rows = step("iii", [&] {
      return std::vector<MomentRow>{compute_moments(j, 0, d0, cfg, z, N),
                                    compute_moments(j, 1, d1, cfg, z, N)};
    });
    EdgeReconstruction e;
    e.j = j;
    e.H = cfg.H_of(j);
    e.omega = step("iv", [&] { return estimate_omega(j, rows[0].beta, rows[0].eta, cfg); });
    URecoveryOptions uo;
    uo.method = opt.method;
    uo.trial_dim = opt.trial_dim;
    uo.grid_points = opt.grid_points;
    uo.max_condition = opt.max_condition;
    e.u0 = step("v", [&] { return recover_u(j, 0, rows[0].beta, e.omega.omega, z, cfg, N, uo); });
    e.u1 = step("v", [&] { return recover_u(j, 1, rows[1].beta, e.omega.omega, z, cfg, N, uo); });
    e.p = step("vi", [&] { return recover_p(j, e.u0.u, e.u1.u, cfg); });
    e.q = step("vi", [&] { return recover_q(j, e.p, cfg); });
    rep.moments.rows[j - 2] = std::move(rows);
    rep.edges[j - 2] = std::move(e);
  };
  std::vector<std::future<void>> jobs;
  for (int j = 2; j <= cfg.m; ++j) jobs.push_back(std::async(std::launch::async, edge_job, j));
  for (auto& f : jobs) f.get();
  return rep;
}

ReconstructionReport invert_all(const Spectrum& spec0, const Spectrum& spec1, const ProblemConfig& cfg,
                                int N, const InverseOptions& opt) {
  return invert_all(spec0.values, spec1.values, cfg, N, opt);
}

void compare_with_truth(ReconstructionReport& report, const PotentialSet& truth) {
  for (auto& e : report.edges) {
    const GridFunction& q = truth.edge(e.j);
    if (q.size() != e.q.size()) throw std::invalid_argument("compare_with_truth: grid mismatch");
    e.has_truth = true;
    e.omega_true = q.integral();
    e.q_l2_norm_true = q.l2_norm();
    e.q_l2_error = l2_relative_error(e.q, q);
  }
}

}  // namespace delaygraph
