#include "delaygraph/moments.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "delaygraph/entire.hpp"

namespace delaygraph {

MomentRow compute_moments(int j, int nu, const ProductCharFn& delta_hat, const ProblemConfig& cfg, int N) {
  return compute_moments(j, nu, delta_hat, cfg, zeros_of_v(j, cfg, N), N);
}

MomentRow compute_moments(int j, int nu, const ProductCharFn& delta_hat, const ProblemConfig& cfg,
                          const VZeros& zeros, int N) {
  if (static_cast<int>(zeros.xi.size()) < N) throw std::invalid_argument("compute_moments: zero row too short");
  MomentRow r;
  r.j = j;
  r.nu = nu;
  r.xi.assign(zeros.xi.begin(), zeros.xi.begin() + N);
  r.eta.assign(zeros.eta.begin(), zeros.eta.begin() + N);
  for (int n = 1; n <= N; ++n) {
    const SpectralParam s(r.xi[n - 1]);
    const double c1 = eval_S(1, 1.0, s).real(), c0 = eval_S(0, 1.0, s).real();
    double alpha = 1.0, scale = 1.0;
    for (int l = 2; l <= cfg.m; ++l) {
      if (l == j) continue;
      alpha *= eval_v(l, 0, s, cfg).real();
      scale *= std::max(std::abs(c1), std::abs(cfg.H_of(l) * c0));
    }
    if (std::abs(alpha) <= kAlphaTolerance * scale) {
      std::ostringstream os;
      os << "compute_moments: H values too close: xi-collision suspected (edge " << j << ", n=" << n << ")";
      throw std::runtime_error(os.str());
    }
    const double weight = nu == 0 ? static_cast<double>(n) : 1.0;
    const double gamma = weight * (delta_hat(r.xi[n - 1]) - eval_delta0(nu, s, cfg)).real();
    r.alpha.push_back(alpha);
    r.gamma.push_back(gamma);
    r.beta.push_back(gamma / alpha);
  }
  return r;
}

}  // namespace delaygraph
