#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <random>

#include "delaygraph/characteristic.hpp"
#include "delaygraph/entire.hpp"
#include "delaygraph/errors.hpp"
#include "delaygraph/inverse.hpp"
#include "delaygraph/oracle.hpp"
#include "expr.hpp"
#include "run_config.hpp"
#include "spectrum_io.hpp"

namespace delaygraph::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct HashMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int guarded(std::ostream& log, const std::function<int()>& fn) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    log << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const ExprError& e) {
    log << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const HashMismatch& e) {
    log << "error: " << e.what() << '\n';
    return kHashMismatch;
  } catch (const CertificationError& e) {
    log << "certification failed: " << e.what() << '\n';
    return kCertification;
  } catch (const BoundaryZeroError& e) {
    log << "certification failed: " << e.what() << '\n';
    return kCertification;
  } catch (const InverseError& e) {
    log << "inverse failed: " << e.what() << '\n';
    return kInverseError;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kFailed;
  }
}

RunConfig load(const fs::path& path, const CommandOptions& opt) {
  RunConfig rc = load_run_config(path);
  if (opt.N) {
    if (*opt.N < 1) throw ConfigError("--n must be positive");
    rc.N = *opt.N;
    rc.N_sweep = {rc.N};
  }
  if (opt.grid) {
    if (*opt.grid < kMinGridPoints || *opt.grid % 2 == 0)
      throw ConfigError("--grid must be odd and >= " + std::to_string(kMinGridPoints));
    rc.P = *opt.grid;
  }
  if (opt.out_dir) rc.output_dir = *opt.out_dir;
  return rc;
}

PotentialSet potentials(const RunConfig& rc) {
  try {
    return rc.potential_set();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

SpectrumOptions spectrum_options(const RunConfig& rc) {
  SpectrumOptions o;
  o.residual_tol = rc.tol.residual;
  o.imag_tol = rc.tol.imag;
  return o;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void write_json(const fs::path& p, const json& j) {
  std::ofstream out(p);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << j.dump(2) << '\n';
}

json spectrum_meta(const Spectrum& sp) {
  return {{"count", sp.size()},
          {"scan_lo", sp.scan_lo},
          {"scan_hi", sp.scan_hi},
          {"winding_total", sp.window_count},
          {"found_total", sp.window_found}};
}

json edge_report(const EdgeReconstruction& e) {
  json j = {{"j", e.j},
            {"H", e.H},
            {"omega", e.omega.omega},
            {"omega_indices", e.omega.used},
            {"omega_fit_residual", e.omega.residual},
            {"u0", {{"gram_condition", e.u0.gram_condition}, {"residual", e.u0.residual}, {"trial_dim", e.u0.trial_dim}}},
            {"u1", {{"gram_condition", e.u1.gram_condition}, {"residual", e.u1.residual}, {"trial_dim", e.u1.trial_dim}}}};
  if (e.has_truth) {
    j["omega_true"] = e.omega_true;
    j["q_l2_error"] = e.q_l2_error;
    j["q_l2_norm_true"] = e.q_l2_norm_true;
  }
  return j;
}

json report_json(const ReconstructionReport& rep, const RunConfig& rc, const std::string& hash) {
  json edges = json::array();
  for (const auto& e : rep.edges) edges.push_back(edge_report(e));
  return {{"config_hash", hash},
          {"N", rep.N},
          {"P", rep.options.grid_points},
          {"K0", rep.K0},
          {"K1", rep.K1},
          {"tail_model", rc.resolved()["tail_model"]},
          {"tail_omega", rep.tail_omega},
          {"u_method", rc.resolved()["u_method"]},
          {"alpha_tolerance", rep.alpha_tolerance},
          {"max_condition", rep.options.max_condition},
          {"edges", edges}};
}

void write_q(const fs::path& dir, const ReconstructionReport& rep, const std::string& hash) {
  for (const auto& e : rep.edges)
    write_grid_csv(dir / ("q_" + std::to_string(e.j) + ".csv"), e.q, "q", hash);
}

std::vector<cplx> head(const std::vector<cplx>& v, int n) {
  return {v.begin(), v.begin() + std::min<std::size_t>(v.size(), static_cast<std::size_t>(n))};
}

}  // namespace

int cmd_forward(const fs::path& config, const CommandOptions& opt, std::ostream& log) {
  return guarded(log, [&] {
    const RunConfig rc = load(config, opt);
    const PotentialSet q = potentials(rc);
    const std::string hash = hash_hex(config_hash(rc.problem));
    const auto t0 = std::chrono::steady_clock::now();
    const EdgeTransforms t = edge_transforms_from_q(q);
    const int K = rc.spectrum_count();
    const Spectrum s0 = compute_spectrum(0, t, K, spectrum_options(rc));
    const Spectrum s1 = compute_spectrum(1, t, K, spectrum_options(rc));
    log << "forward: " << K << " eigenvalues per spectrum in " << std::fixed << std::setprecision(2)
        << seconds_since(t0) << " s\n";
    fs::create_directories(rc.output_dir);
    write_spectrum_csv(rc.output_dir / "spectrum_nu0.csv", s0, hash);
    write_spectrum_csv(rc.output_dir / "spectrum_nu1.csv", s1, hash);
    write_json(rc.output_dir / "run_meta.json",
               {{"command", "forward"},
                {"config_hash", hash},
                {"config", rc.resolved()},
                {"spectra", {{"nu0", spectrum_meta(s0)}, {"nu1", spectrum_meta(s1)}}}});
    log << "wrote " << rc.output_dir.string() << '\n';
    return kOk;
  });
}

int cmd_invert(const fs::path& config, const CommandOptions& opt, std::ostream& log) {
  return guarded(log, [&] {
    const RunConfig rc = load(config, opt);
    const std::string hash = hash_hex(config_hash(rc.problem));
    if (opt.spec0.empty() || opt.spec1.empty()) throw ConfigError("invert needs --spec0 and --spec1");
    const SpectrumFile f0 = read_spectrum_csv(opt.spec0);
    const SpectrumFile f1 = read_spectrum_csv(opt.spec1);
    if (f0.nu == 1 || f1.nu == 0) throw ConfigError("--spec0 must hold the nu=0 spectrum and --spec1 the nu=1 spectrum");
    for (const auto* f : {&f0, &f1})
      if (f->config_hash != hash && !opt.force)
        throw HashMismatch("spectrum config_hash " + (f->config_hash.empty() ? std::string("(none)") : f->config_hash) +
                           " does not match the configuration (" + hash + "); use --force to override");
    std::optional<PotentialSet> truth;
    if (rc.has_potentials()) truth = potentials(rc);
    const auto t0 = std::chrono::steady_clock::now();
    ReconstructionReport rep = invert_all(f0.values, f1.values, rc.problem, rc.N, rc.inverse_options());
    if (truth) compare_with_truth(rep, *truth);
    log << "invert: N=" << rc.N << " in " << std::fixed << std::setprecision(2) << seconds_since(t0) << " s\n";
    for (const auto& e : rep.edges) {
      log << "  edge " << e.j << ": omega " << std::setprecision(8) << e.omega.omega;
      if (e.has_truth) log << " (true " << e.omega_true << "), L2 error " << std::scientific << std::setprecision(3) << e.q_l2_error << std::fixed;
      log << '\n';
    }
    fs::create_directories(rc.output_dir);
    write_q(rc.output_dir, rep, hash);
    json r = report_json(rep, rc, hash);
    r["spectra"] = {opt.spec0.string(), opt.spec1.string()};
    if (opt.force) r["forced"] = true;
    write_json(rc.output_dir / "report.json", r);
    return kOk;
  });
}

int cmd_roundtrip(const fs::path& config, const CommandOptions& opt, std::ostream& log) {
  return guarded(log, [&] {
    const RunConfig rc = load(config, opt);
    const PotentialSet q = potentials(rc);
    const std::string hash = hash_hex(config_hash(rc.problem));
    auto t0 = std::chrono::steady_clock::now();
    const EdgeTransforms t = edge_transforms_from_q(q);
    const int K = rc.spectrum_count();
    const Spectrum s0 = compute_spectrum(0, t, K, spectrum_options(rc));
    const Spectrum s1 = compute_spectrum(1, t, K, spectrum_options(rc));
    log << "forward: " << K << " eigenvalues per spectrum in " << std::fixed << std::setprecision(2)
        << seconds_since(t0) << " s\n";
    fs::create_directories(rc.output_dir);
    write_spectrum_csv(rc.output_dir / "spectrum_nu0.csv", s0, hash);
    write_spectrum_csv(rc.output_dir / "spectrum_nu1.csv", s1, hash);

    std::ofstream csv(rc.output_dir / "roundtrip.csv");
    csv << "# config_hash=" << hash << "\n";
    csv << "edge,N,l2_rel_error,omega_true,omega_rec\n";
    json runs = json::array();
    ReconstructionReport last;
    for (int n : rc.N_sweep) {
      t0 = std::chrono::steady_clock::now();
      const int k = rc.spectrum_count(n);
      ReconstructionReport rep = invert_all(head(s0.values, k), head(s1.values, k), rc.problem, n, rc.inverse_options());
      compare_with_truth(rep, q);
      log << "N=" << n << " (" << std::fixed << std::setprecision(2) << seconds_since(t0) << " s):";
      for (const auto& e : rep.edges) {
        csv << e.j << ',' << n << ',' << fmt17(e.q_l2_error) << ',' << fmt17(e.omega_true) << ','
            << fmt17(e.omega.omega) << '\n';
        log << "  q_" << e.j << " " << std::scientific << std::setprecision(3) << e.q_l2_error << std::fixed;
      }
      log << '\n';
      runs.push_back(report_json(rep, rc, hash));
      last = std::move(rep);
    }
    write_q(rc.output_dir, last, hash);
    write_json(rc.output_dir / "report.json", {{"config_hash", hash}, {"runs", runs}});
    write_json(rc.output_dir / "run_meta.json",
               {{"command", "roundtrip"},
                {"config_hash", hash},
                {"config", rc.resolved()},
                {"spectra", {{"nu0", spectrum_meta(s0)}, {"nu1", spectrum_meta(s1)}}}});
    return kOk;
  });
}

// ---------------------------------------------------------------------------

namespace {

struct Check {
  std::string name;
  double value;
  double tolerance;
  bool pass() const { return std::isfinite(value) && value <= tolerance; }
};

ProblemConfig make_cfg(int m, double a, std::vector<double> H) {
  ProblemConfig c;
  c.m = m;
  c.a = a;
  c.H = std::move(H);
  return c;
}

RealFn random_smooth(std::mt19937& rng) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  std::vector<double> c(7);
  for (double& v : c) v = U(rng);
  return [c](double x) {
    double s = c[0];
    for (int k = 1; k <= 3; ++k)
      s += (c[2 * k - 1] * std::sin(k * std::numbers::pi * x) + c[2 * k] * std::cos(k * std::numbers::pi * x)) / k;
    return s;
  };
}

}  // namespace

int cmd_selftest(const CommandOptions& opt, std::ostream& log) {
  return guarded(log, [&] {
    using std::numbers::pi;
    const double sc = opt.tolerance_scale;
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937 rng(20240601);
    std::vector<Check> checks;

    const auto cfg = make_cfg(3, 1.0, {1.0, -1.0});
    {
      double worst = 0.0;
      for (int trial = 0; trial < 2; ++trial) {
        auto q = PotentialSet::from_functions(cfg, {random_smooth(rng), random_smooth(rng)});
        auto t = edge_transforms_from_q(q);
        for (int i = 0; i < 24; ++i) {
          const SpectralParam s(-50.0 + 2050.0 * i / 23.0);
          for (int j = 2; j <= 3; ++j)
            for (int nu = 0; nu < 2; ++nu)
              worst = std::max(worst, std::abs(eval_VQ(j, nu, s, t) - oracle::eval_VQ_quadrature(j, nu, s, q)));
        }
      }
      checks.push_back({"eval_VQ closed form vs quadrature", worst, 1e-8 * sc});
    }
    auto paper = PotentialSet::from_functions(cfg, {[](double x) { return std::sin(pi * x); },
                                                    [](double x) { return x * (1.0 - x); }});
    auto tp = edge_transforms_from_q(paper);
    {
      double worst = 0.0;
      for (double lam : {-20.0, 10.0, 400.0})
        for (int nu = 0; nu < 2; ++nu) {
          const cplx a = eval_delta(nu, SpectralParam(lam), tp);
          worst = std::max(worst, std::abs(a - oracle::eval_delta_quadrature(nu, SpectralParam(lam), paper)) / (1 + std::abs(a)));
        }
      checks.push_back({"Delta assembly vs quadrature", worst, 1e-8 * sc});
    }
    {
      double worst = 0.0;
      for (int m = 2; m <= 5; ++m) {
        auto c = make_cfg(m, 1.0, std::vector<double>(static_cast<std::size_t>(m - 1), 0.0));
        for (int i = 0; i < 100; ++i) {
          const double lam = -100.0 + 10100.0 * i / 99.0;
          for (int nu = 0; nu < 2; ++nu) {
            const cplx x = eval_delta00(nu, SpectralParam(lam), c);
            const cplx y = eval_delta00_factored(nu, SpectralParam(lam), m);
            worst = std::max(worst, std::abs(x - y) / std::max({std::abs(x), std::abs(y), 1e-300}));
          }
        }
      }
      checks.push_back({"Delta00 factorizations", worst, 1e-12 * sc});
    }
    {
      double worst = 0.0;
      for (double H : {1.0, -0.5}) {
        auto c = make_cfg(2, 1.0, {H});
        auto z = zeros_of_v(2, c, 16);
        for (int nu = 0; nu < 2; ++nu)
          worst = std::max(worst, (oracle::gram_bruteforce(2, nu, 16, c) - gram_closed_form(nu, z.xi)).cwiseAbs().maxCoeff());
      }
      checks.push_back({"Gram closed form vs brute force", worst, 1e-9 * sc});
    }
    {
      double worst = 0.0;
      std::uniform_real_distribution<double> HU(-2.0, 2.0);
      for (int trial = 0; trial < 5; ++trial) {
        const double H = HU(rng);
        auto p = GridFunction::sample(0.0, 1.0, 513, random_smooth(rng));
        auto back = p_from_q(q_from_p(p, H), H);
        for (int i = 0; i < p.size(); ++i) worst = std::max(worst, std::abs(back[i] - p[i]));
      }
      checks.push_back({"Volterra resolvent composition", worst, 1e-10 * sc});
    }
    {
      double worst = 0.0;
      for (double H : {1.0, -0.5, -3.0}) {
        auto c = make_cfg(2, 1.0, {H});
        auto z = zeros_of_v(2, c, 20);
        for (double xi : z.xi) worst = std::max(worst, std::abs(eval_v(2, 0, SpectralParam(xi), c)));
      }
      checks.push_back({"zeros of v_0 residual", worst, 1e-12 * sc});
    }
    {
      double worst = 0.0, rel = 0.0;
      for (int nu = 0; nu < 2; ++nu) {
        Spectrum sp = compute_spectrum(nu, tp, 10);
        for (int n = 0; n < sp.size(); ++n) {
          worst = std::max(worst, sp.residuals[n] / sp.scales[n]);
          rel = std::max(rel, oracle::residual_check(SpectralParam(sp.values[n]), paper, nu).relative());
        }
      }
      checks.push_back({"eigenvalue residual / local scale", worst, 1e-10 * sc});
      checks.push_back({"oracle sigma_min at eigenvalues", rel, 1e-8 * sc});
    }
    {
      double worst = 0.0;
      for (int nu = 0; nu < 2; ++nu) {
        std::vector<cplx> sp;
        for (const auto& z : zeros_of_delta00(nu, cfg, 24)) sp.emplace_back(z.lambda, 0.0);
        auto d = reconstruct_delta(nu, sp, cfg);
        for (double lam : {-7.0, 0.4, 33.0, 250.0}) {
          const cplx r = eval_delta00(nu, SpectralParam(lam), cfg);
          worst = std::max(worst, std::abs(d(lam) - r) / (1 + std::abs(r)));
        }
      }
      checks.push_back({"product with unperturbed zeros", worst, 1e-12 * sc});
    }

    bool ok = true;
    log << std::left << std::setw(40) << "check" << std::setw(14) << "value" << std::setw(14) << "tolerance"
        << "result\n";
    for (const auto& c : checks) {
      ok = ok && c.pass();
      log << std::left << std::setw(40) << c.name << std::scientific << std::setprecision(3) << std::setw(14)
          << c.value << std::setw(14) << c.tolerance << (c.pass() ? "PASS" : "FAIL") << '\n';
    }
    log << std::fixed << std::setprecision(2) << "selftest " << (ok ? "passed" : "FAILED") << " in "
        << seconds_since(t0) << " s\n";
    return ok ? kOk : kFailed;
  });
}

}  // namespace delaygraph::cli
