#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace delaygraph {

using cplx = std::complex<double>;

// Star graph with m edges; edge 1 is the root edge, edges 2..m carry
// Robin coefficients H[j-2].
struct ProblemConfig {
  int m = 2;
  double a = 1.0;
  std::vector<double> H;

  double H_of(int j) const { return H.at(static_cast<std::size_t>(j - 2)); }
  // length of the u-interval [0, 2-a]
  double u_length() const { return 2.0 - a; }

  // throws std::invalid_argument
  void validate() const;
};

// Spectral parameter; rho is stored so that evenness in rho can be tested
// without going through the square root.
class SpectralParam {
 public:
  SpectralParam(cplx lambda) : lambda_(lambda), rho_(std::sqrt(lambda)) {}
  SpectralParam(double lambda) : SpectralParam(cplx(lambda, 0.0)) {}

  static SpectralParam from_rho(cplx rho) {
    SpectralParam s(rho * rho);
    s.rho_ = rho;
    return s;
  }

  cplx lambda() const { return lambda_; }
  cplx rho() const { return rho_; }

 private:
  cplx lambda_;
  cplx rho_;
};

}  // namespace delaygraph
