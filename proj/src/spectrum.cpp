#include "delaygraph/spectrum.hpp"

#include <algorithm>
#include <atomic>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>

#include "delaygraph/characteristic.hpp"
#include "delaygraph/entire.hpp"
#include "delaygraph/errors.hpp"
#include "delaygraph/zeros.hpp"

namespace delaygraph {

namespace {

constexpr double pi = std::numbers::pi;

struct Zero {
  cplx z;
  int mult = 1;
};

struct CellResult {
  CellCertificate cert;
  std::vector<Zero> zeros;
  bool boundary_failure = false;
  std::string error;
};

bool less_zero(const Zero& x, const Zero& y) {
  if (x.z.real() != y.z.real()) return x.z.real() < y.z.real();
  return x.z.imag() < y.z.imag();
}

class CellSolver {
 public:
  CellSolver(const EntireFn& f, const SpectrumOptions& o) : f_(f), o_(o) {}

  CellResult solve(const Rect& r) {
    CellResult out;
    out.cert.rect = r;
    try {
      const WindingResult w = count_zeros_in_rect(f_, r, o_.winding);
      out.cert.winding = w.count;
      out.cert.scale = w.max_modulus;
      min_width_ = r.width() * std::ldexp(1.0, -o_.max_depth);
      resolve(r, w.count, out.zeros);
      std::sort(out.zeros.begin(), out.zeros.end(), less_zero);
      for (const auto& z : out.zeros) out.cert.found += z.mult;
      if (out.cert.found != out.cert.winding) {
        std::ostringstream os;
        os << "certification mismatch on " << r.str() << ": winding " << out.cert.winding
           << ", found " << out.cert.found;
        out.error = os.str();
      }
    } catch (const BoundaryZeroError& e) {
      out.boundary_failure = true;
      out.error = e.what();
    } catch (const std::exception& e) {
      out.error = e.what();
    }
    return out;
  }

 private:
  const EntireFn& f_;
  const SpectrumOptions& o_;
  double min_width_ = 0.0;

  double fr(double x) const { return f_(cplx(x, 0.0)).real(); }

  double bracket_root(double lo, double hi, double flo, double fhi) const {
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    std::uintmax_t it = 200;
    auto g = [this](double x) { return fr(x); };
    auto r = boost::math::tools::toms748_solve(g, lo, hi, flo, fhi,
                                               boost::math::tools::eps_tolerance<double>(52), it);
    return 0.5 * (r.first + r.second);
  }

  // sign-change scan of the real segment; returns simple real roots found
  std::vector<double> real_roots(const Rect& r, int samples) const {
    std::vector<double> roots;
    double x0 = r.re_lo, f0 = fr(x0);
    for (int i = 1; i <= samples; ++i) {
      const double x1 = i == samples ? r.re_hi : r.re_lo + r.width() * i / samples;
      const double f1 = fr(x1);
      if (f0 == 0.0) {
        roots.push_back(x0);
      } else if ((f0 < 0) != (f1 < 0) && f1 != 0.0) {
        roots.push_back(bracket_root(x0, x1, f0, f1));
      }
      x0 = x1;
      f0 = f1;
    }
    if (f0 == 0.0) roots.push_back(x0);
    return roots;
  }

  cplx newton(cplx z, const Rect& r, int mult) const {
    for (int it = 0; it < 100; ++it) {
      const double h = 1e-7 * std::max(1.0, std::abs(z));
      const cplx fz = f_(z);
      if (fz == cplx(0.0)) return z;
      const cplx d = (f_(z + h) - f_(z - h)) / (2.0 * h);
      if (d == cplx(0.0)) break;
      const cplx step = static_cast<double>(mult) * fz / d;
      z -= step;
      if (!r.contains(z)) throw CertificationError("newton left the rectangle " + r.str());
      if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(z))) return z;
    }
    return z;
  }

  void resolve(const Rect& r, int k, std::vector<Zero>& out) {
    if (k == 0) return;
    if (k < 0) throw CertificationError("negative winding on " + r.str());
    const bool straddles = r.im_lo < 0.0 && r.im_hi > 0.0;
    if (straddles) {
      const auto roots = real_roots(r, 16 * k + 1);
      if (static_cast<int>(roots.size()) == k) {
        for (double x : roots) out.push_back({cplx(x, 0.0), 1});
        return;
      }
    }
    if (straddles && std::min(r.im_hi, -r.im_lo) > r.width()) {
      peel(r, k, out);
      return;
    }
    if (!straddles && k == 1) {
      out.push_back({newton(cplx(0.5 * (r.re_lo + r.re_hi), 0.5 * (r.im_lo + r.im_hi)), r, 1), 1});
      return;
    }
    if (r.width() > min_width_ && (straddles || r.width() >= r.height())) {
      split_re(r, k, out);
      return;
    }
    if (!straddles) {
      split_im(r, 0.5 * (r.im_lo + r.im_hi), k, out);
      return;
    }
    cluster(r, k, out);
  }

  void split_re(const Rect& r, int k, std::vector<Zero>& out) {
    for (int attempt = 0; attempt < 6; ++attempt) {
      const double frac = 0.5 + 0.0731 * attempt * (attempt % 2 ? 1 : -1);
      const double xm = r.re_lo + frac * r.width();
      const Rect left{r.re_lo, xm, r.im_lo, r.im_hi}, right{xm, r.re_hi, r.im_lo, r.im_hi};
      try {
        const int kl = count_zeros_in_rect(f_, left, o_.winding).count;
        const int kr = count_zeros_in_rect(f_, right, o_.winding).count;
        if (kl + kr != k)
          throw CertificationError("subdivision count mismatch on " + r.str());
        resolve(left, kl, out);
        resolve(right, kr, out);
        return;
      } catch (const BoundaryZeroError&) {
      }
    }
    throw CertificationError("could not place a split line in " + r.str());
  }

  // keep straddling rectangles roughly square: strips above and below go separately
  void peel(const Rect& r, int k, std::vector<Zero>& out) {
    const double c = 0.5 * r.width();
    const Rect up{r.re_lo, r.re_hi, c, r.im_hi}, mid{r.re_lo, r.re_hi, -c, c}, down{r.re_lo, r.re_hi, r.im_lo, -c};
    const int ku = count_zeros_in_rect(f_, up, o_.winding).count;
    const int kd = count_zeros_in_rect(f_, down, o_.winding).count;
    const int km = k - ku - kd;
    if (km < 0) throw CertificationError("subdivision count mismatch on " + r.str());
    resolve(up, ku, out);
    resolve(mid, km, out);
    resolve(down, kd, out);
  }

  void split_im(const Rect& r, double ym, int k, std::vector<Zero>& out) {
    const Rect lo{r.re_lo, r.re_hi, r.im_lo, ym}, hi{r.re_lo, r.re_hi, ym, r.im_hi};
    const int kl = count_zeros_in_rect(f_, lo, o_.winding).count;
    const int kh = count_zeros_in_rect(f_, hi, o_.winding).count;
    if (kl + kh != k) throw CertificationError("subdivision count mismatch on " + r.str());
    resolve(lo, kl, out);
    resolve(hi, kh, out);
  }

  // tiny straddling rectangle still holding k >= 2 zeros
  void cluster(const Rect& r, int k, std::vector<Zero>& out) {
    const double eps = 0.25 * r.width();
    int upper = 0;
    if (r.im_hi > eps) {
      const Rect up{r.re_lo, r.re_hi, eps, r.im_hi};
      upper = count_zeros_in_rect(f_, up, o_.winding).count;
      if (upper > 0) {
        // conjugate symmetry: mirror image below the axis
        std::vector<Zero> above;
        resolve(up, upper, above);
        for (const auto& z : above) {
          out.push_back(z);
          out.push_back({std::conj(z.z), z.mult});
        }
      }
    }
    const int real_count = k - 2 * upper;
    if (real_count <= 0) return;
    const auto roots = real_roots(r, 64);
    if (static_cast<int>(roots.size()) == real_count) {
      for (double x : roots) out.push_back({cplx(x, 0.0), 1});
      return;
    }
    if (!roots.empty())
      throw CertificationError("unresolved mixed cluster in " + r.str());
    const Rect near{r.re_lo, r.re_hi, -eps, eps};
    const cplx z = newton(cplx(0.5 * (r.re_lo + r.re_hi), 0.0), near, real_count);
    out.push_back({cplx(z.real(), 0.0), real_count});
  }
};

template <class Fn>
void parallel_for(int n, int threads, Fn fn) {
  if (threads <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int t = 0; t < std::min(threads, n); ++t)
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++) fn(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace

Spectrum find_zeros(const EntireFn& f, double lambda_lo, int N, double lambda_hi,
                    const SpectrumOptions& opts) {
  if (N < 1) throw std::invalid_argument("compute_spectrum: N must be >= 1");
  const int threads =
      opts.threads > 0 ? opts.threads : std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
  const double step = pi * opts.cell_step;

  // cell edges uniform in the signed variable s, lambda = s |s|
  std::vector<double> edges{lambda_lo};
  const double s_lo = lambda_lo < 0.0 ? -std::sqrt(-lambda_lo) : std::sqrt(lambda_lo);
  long k_next = static_cast<long>(std::floor(s_lo / step - opts.cell_offset));
  auto next_edge = [&]() {
    for (;;) {
      const double sv = step * (static_cast<double>(k_next++) + opts.cell_offset);
      const double lam = sv * std::abs(sv);
      if (lam > edges.back() + 1e-9 * (1.0 + std::abs(lam))) return lam;
    }
  };

  Spectrum sp;
  sp.scan_lo = lambda_lo;
  std::vector<Zero> found;
  int total = 0;
  int nudges = 0;
  const int batch = std::max(8, 4 * threads);
  while (total < N) {
    while (static_cast<int>(edges.size()) < batch + 1) edges.push_back(next_edge());
    if (edges.front() > lambda_hi) {
      std::ostringstream os;
      os << "compute_spectrum: only " << total << " of " << N << " zeros found below " << lambda_hi;
      throw CertificationError(os.str());
    }
    std::vector<CellResult> res(static_cast<std::size_t>(batch));
    parallel_for(batch, threads, [&](int i) {
      const double lo = edges[i], hi = edges[i + 1];
      const double w = 0.5 * (hi - lo);
      CellSolver solver(f, opts);
      res[i] = solver.solve(Rect{lo, hi, -w, w});
    });
    int accepted = 0;
    for (; accepted < batch; ++accepted) {
      const CellResult& c = res[accepted];
      if (c.boundary_failure) break;
      if (!c.error.empty()) throw CertificationError("compute_spectrum: " + c.error);
      sp.certificates.push_back(c.cert);
      sp.window_count += c.cert.winding;
      sp.window_found += c.cert.found;
      for (const auto& z : c.zeros) {
        found.push_back(z);
        total += z.mult;
      }
      sp.scan_hi = c.cert.rect.re_hi;
    }
    edges.erase(edges.begin(), edges.begin() + accepted);
    if (accepted < batch) {
      // nudge the right edge of the failing cell towards its neighbour
      if (accepted > 0) nudges = 0;
      if (++nudges > 8) throw CertificationError("compute_spectrum: " + res[accepted].error);
      if (edges.size() < 3) edges.push_back(next_edge());
      edges[1] += 0.173 * (edges[2] - edges[1]);
    }
  }

  std::sort(found.begin(), found.end(), less_zero);
  sp.values.clear();
  for (const auto& z : found) {
    if (opts.require_real && std::abs(z.z.imag()) > opts.imag_tol) {
      std::ostringstream os;
      os.precision(17);
      os << "compute_spectrum: non-real zero " << z.z.real() << " + " << z.z.imag() << "i";
      throw CertificationError(os.str());
    }
    for (int r = 0; r < z.mult && sp.size() < N; ++r) {
      sp.values.push_back(z.z);
      sp.multiplicity.push_back(z.mult);
    }
  }
  for (const cplx& z : sp.values) {
    sp.residuals.push_back(std::abs(f(z)));
    double scale = 0.0;
    for (const auto& c : sp.certificates)
      if (z.real() >= c.rect.re_lo && z.real() <= c.rect.re_hi) scale = std::max(scale, c.scale);
    sp.scales.push_back(scale);
    if (sp.residuals.back() > opts.residual_tol * scale) {
      std::ostringstream os;
      os.precision(17);
      os << "compute_spectrum: residual " << sp.residuals.back() << " at " << z.real()
         << " exceeds tolerance (scale " << scale << ")";
      throw CertificationError(os.str());
    }
  }
  return sp;
}

double spectrum_lower_bound(int nu, const EdgeTransforms& t) {
  double mass = 1.0;
  for (const auto& e : t.edges) {
    double u = 0.0;
    for (std::size_t i = 0; i < e.u0.values.size(); ++i)
      u += std::abs(e.u0.values[i]) + std::abs(e.u1.values[i]);
    u *= e.u0.step();
    mass += std::abs(e.H) + (std::abs(e.omega) + u) * (1.0 + std::abs(e.H));
  }
  double tau = 2.0 * mass;
  for (int it = 0; it < 60; ++it) {
    const SpectralParam s(-tau * tau);
    const cplx r = eval_delta(nu, s, t) / eval_delta00(nu, s, t.cfg);
    if (std::abs(r - 1.0) < 0.25) break;
    tau *= 2.0;
  }
  return -tau * tau;
}

Spectrum compute_spectrum(int nu, const EdgeTransforms& t, int N, const SpectrumOptions& opts) {
  if (nu != 0 && nu != 1) throw std::invalid_argument("compute_spectrum: nu must be 0 or 1");
  const double lo = spectrum_lower_bound(nu, t);
  const double hi = std::pow(pi * (N + 2), 2);
  EntireFn f = [&t, nu](cplx z) { return eval_delta(nu, SpectralParam(z), t); };
  Spectrum sp = find_zeros(f, lo, N, hi, opts);
  sp.nu = nu;
  for (const auto& z : zeros_of_delta00(nu, t.cfg, N)) sp.paired_unperturbed.push_back(z.lambda);
  return sp;
}

}  // namespace delaygraph
