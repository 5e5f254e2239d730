#include "delaygraph/product.hpp"

#include <algorithm>
#include <memory>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "delaygraph/characteristic.hpp"
#include "delaygraph/entire.hpp"
#include "delaygraph/zeros.hpp"

namespace delaygraph {

ReferenceDeterminant unperturbed_reference(int nu, const ProblemConfig& cfg, int count) {
  ReferenceDeterminant r;
  r.f = [nu, cfg](cplx z) { return eval_delta00(nu, SpectralParam(z), cfg); };
  for (const auto& z : zeros_of_delta00(nu, cfg, count)) r.zeros.emplace_back(z.lambda, 0.0);
  return r;
}

ReferenceDeterminant omega_model_reference(int nu, const ProblemConfig& cfg, const std::vector<double>& omega,
                                           int count, const SpectrumOptions& opts) {
  auto t = std::make_shared<EdgeTransforms>(omega_model_transforms(cfg, omega));
  SpectrumOptions o = opts;
  o.require_real = false;
  ReferenceDeterminant r;
  r.zeros = compute_spectrum(nu, *t, count, o).values;
  r.f = [nu, t](cplx z) { return eval_delta(nu, SpectralParam(z), *t); };
  return r;
}

ProductCharFn::ProductCharFn(int nu, std::vector<cplx> spectrum, const ProblemConfig& cfg)
    : nu_(nu), cfg_(cfg), spectrum_(std::move(spectrum)) {
  if (size() >= 8) ref_ = unperturbed_reference(nu, cfg, size() + 1);
  init();
}

ProductCharFn::ProductCharFn(int nu, std::vector<cplx> spectrum, const ProblemConfig& cfg,
                             ReferenceDeterminant ref)
    : nu_(nu), cfg_(cfg), spectrum_(std::move(spectrum)), ref_(std::move(ref)) {
  init();
}

void ProductCharFn::init() {
  const int K = size();
  if (K < 8) throw std::invalid_argument("reconstruct_delta: insufficient spectral data (need >= 8 eigenvalues)");
  for (int n = 1; n < K; ++n) {
    const cplx a = spectrum_[n - 1], b = spectrum_[n];
    if (a.real() > b.real() || (a.real() == b.real() && a.imag() > b.imag()))
      throw std::invalid_argument("reconstruct_delta: spectrum must be sorted ascending");
  }
  if (static_cast<int>(ref_.zeros.size()) < K + 1 || !ref_.f)
    throw std::invalid_argument("reconstruct_delta: reference needs K + 1 zeros");
  // the last given eigenvalue must not sit against the first tail zero
  const cplx l0 = ref_.zeros[K - 1], tail = ref_.zeros[K], last = spectrum_[K - 1];
  if (std::abs(tail - l0) > 1e-9 * (1.0 + std::abs(tail)) && std::abs(last - tail) < std::abs(last - l0)) {
    std::ostringstream os;
    os << "reconstruct_delta: eigenvalue " << K << " pairs with tail zero " << tail.real()
       << "; pairing broken, increase N";
    throw std::invalid_argument(os.str());
  }
  for (int n = 0; n < K; ++n) {
    const cplx z = ref_.zeros[n];
    if (!centers_.empty() && std::abs(z - centers_.back()) <= 1e-9 * (1.0 + std::abs(z))) continue;
    centers_.push_back(z);
  }
  gaps_.assign(centers_.size(), INFINITY);
  for (std::size_t i = 0; i < centers_.size(); ++i)
    for (std::size_t k = i + 1; k < centers_.size() && k <= i + 8; ++k) {
      const double d = std::abs(centers_[k] - centers_[i]);
      gaps_[i] = std::min(gaps_[i], d);
      gaps_[k] = std::min(gaps_[k], d);
    }
}

cplx ProductCharFn::direct(cplx lambda) const {
  cplx v = ref_.f(lambda);
  for (int n = 0; n < size(); ++n) v *= (spectrum_[n] - lambda) / (ref_.zeros[n] - lambda);
  return v;
}

cplx ProductCharFn::operator()(cplx lambda) const {
  auto it = std::lower_bound(centers_.begin(), centers_.end(), lambda.real(),
                             [](cplx c, double x) { return c.real() < x; });
  const std::size_t at = static_cast<std::size_t>(it - centers_.begin());
  std::size_t best = centers_.size();
  double dist = INFINITY;
  for (std::size_t k = at >= 4 ? at - 4 : 0; k < std::min(centers_.size(), at + 4); ++k) {
    const double d = std::abs(lambda - centers_[k]);
    if (d < dist) {
      dist = d;
      best = k;
    }
  }
  if (best == centers_.size() || dist >= 1e-2 * gaps_[best]) return direct(lambda);
  // removable singularity: mean value over a circle
  constexpr int M = 32;
  const double r = 0.25 * gaps_[best];
  cplx sum = 0.0;
  for (int k = 0; k < M; ++k)
    sum += direct(lambda + r * std::polar(1.0, 2.0 * std::numbers::pi * (k + 0.5) / M));
  return sum / static_cast<double>(M);
}

ProductCharFn reconstruct_delta(int nu, const std::vector<cplx>& spectrum, const ProblemConfig& cfg) {
  return ProductCharFn(nu, spectrum, cfg);
}

ProductCharFn reconstruct_delta(int nu, const std::vector<cplx>& spectrum, const ProblemConfig& cfg,
                                ReferenceDeterminant ref) {
  return ProductCharFn(nu, spectrum, cfg, std::move(ref));
}

}  // namespace delaygraph
