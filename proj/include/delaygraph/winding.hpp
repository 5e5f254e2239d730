#pragma once

#include <functional>
#include <string>

#include "delaygraph/config.hpp"

namespace delaygraph {

using EntireFn = std::function<cplx(cplx)>;

struct Rect {
  double re_lo, re_hi, im_lo, im_hi;

  double width() const { return re_hi - re_lo; }
  double height() const { return im_hi - im_lo; }
  bool contains(cplx z) const {
    return z.real() > re_lo && z.real() < re_hi && z.imag() > im_lo && z.imag() < im_hi;
  }
  std::string str() const;
};

struct WindingOptions {
  int initial_segments = 8;           // per side
  double max_step_angle = 0.7853981633974483;
  double min_modulus_rel = 1e-11;     // boundary-zero suspicion threshold
  int max_depth = 50;
};

struct WindingResult {
  int count = 0;
  double max_modulus = 0.0;
  double min_modulus = 0.0;
  int evaluations = 0;
};

// Throws BoundaryZeroError when a zero is suspected on or next to the contour.
WindingResult count_zeros_in_rect(const EntireFn& f, const Rect& r, const WindingOptions& opt = {});

}  // namespace delaygraph
