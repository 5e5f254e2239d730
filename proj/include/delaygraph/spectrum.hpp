#pragma once

#include <vector>

#include "delaygraph/transforms.hpp"
#include "delaygraph/winding.hpp"

namespace delaygraph {

struct SpectrumOptions {
  double cell_step = 0.125;   // rho-width of a scan cell, in units of pi
  double cell_offset = 0.37;  // cell edges at rho = pi * cell_step * (k + offset)
  int max_depth = 20;         // subdivision cap for clusters
  bool require_real = true;
  double imag_tol = 1e-9;
  double residual_tol = 1e-10;
  int threads = 0;            // 0: hardware concurrency
  WindingOptions winding;
};

struct CellCertificate {
  Rect rect;
  int winding = 0;
  int found = 0;
  double scale = 0.0;  // max |Delta| on the contour
};

struct Spectrum {
  int nu = 0;
  std::vector<cplx> values;
  std::vector<double> paired_unperturbed;
  std::vector<double> residuals;  // |Delta_nu(lambda_n)|
  std::vector<double> scales;     // local scale of the enclosing cell
  std::vector<int> multiplicity;  // 1 unless an unresolved cluster was reported
  std::vector<CellCertificate> certificates;
  double scan_lo = 0.0;
  double scan_hi = 0.0;
  int window_count = 0;  // total winding number over all scanned cells
  int window_found = 0;  // zeros located in the scanned cells (with multiplicity)

  int size() const { return static_cast<int>(values.size()); }
};

// Zeros of a function real on the real axis, first N by ascending real part.
Spectrum find_zeros(const EntireFn& f, double lambda_lo, int N, double lambda_hi,
                    const SpectrumOptions& opts = {});

double spectrum_lower_bound(int nu, const EdgeTransforms& t);

Spectrum compute_spectrum(int nu, const EdgeTransforms& t, int N, const SpectrumOptions& opts = {});

}  // namespace delaygraph
