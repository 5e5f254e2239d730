#pragma once

#include <vector>

#include "delaygraph/spectrum.hpp"
#include "delaygraph/winding.hpp"

namespace delaygraph {

// An entire function of the same class as Delta_nu together with its zeros.
struct ReferenceDeterminant {
  EntireFn f;
  std::vector<cplx> zeros;  // ascending, at least K + 1
};

// Delta00 and its zeros (each repeated by multiplicity)
ReferenceDeterminant unperturbed_reference(int nu, const ProblemConfig& cfg, int count);
// Delta_nu for u = 0 and the given omega per edge; omega = 0 gives Delta0_nu
ReferenceDeterminant omega_model_reference(int nu, const ProblemConfig& cfg, const std::vector<double>& omega,
                                           int count, const SpectrumOptions& opts = {});

// ref.f(lambda) * prod_{n<=K} (lambda_n - lambda) / (mu_n - lambda), mu_n = ref.zeros
class ProductCharFn {
 public:
  ProductCharFn(int nu, std::vector<cplx> spectrum, const ProblemConfig& cfg);
  ProductCharFn(int nu, std::vector<cplx> spectrum, const ProblemConfig& cfg, ReferenceDeterminant ref);

  cplx operator()(cplx lambda) const;
  cplx operator()(double lambda) const { return (*this)(cplx(lambda, 0.0)); }

  int nu() const { return nu_; }
  int size() const { return static_cast<int>(spectrum_.size()); }
  const std::vector<cplx>& spectrum() const { return spectrum_; }
  const std::vector<cplx>& reference_zeros() const { return ref_.zeros; }

 private:
  void init();
  cplx direct(cplx lambda) const;

  int nu_;
  ProblemConfig cfg_;
  std::vector<cplx> spectrum_;
  ReferenceDeterminant ref_;
  std::vector<cplx> centers_;  // paired reference zeros grouped into clusters
  std::vector<double> gaps_;   // distance from each cluster to its nearest neighbour
};

ProductCharFn reconstruct_delta(int nu, const std::vector<cplx>& spectrum, const ProblemConfig& cfg);
ProductCharFn reconstruct_delta(int nu, const std::vector<cplx>& spectrum, const ProblemConfig& cfg,
                                ReferenceDeterminant ref);

}  // namespace delaygraph
