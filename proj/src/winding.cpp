#include "delaygraph/winding.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "delaygraph/errors.hpp"

namespace delaygraph {

std::string Rect::str() const {
  std::ostringstream os;
  os.precision(17);
  os << "[" << re_lo << ", " << re_hi << "] x [" << im_lo << ", " << im_hi << "]";
  return os.str();
}

namespace {

struct Tracker {
  const EntireFn& f;
  const WindingOptions& opt;
  const Rect& rect;
  double min_mod = INFINITY;
  double max_mod = 0.0;
  int evals = 0;

  cplx eval(cplx z) {
    const cplx v = f(z);
    ++evals;
    const double a = std::abs(v);
    if (!std::isfinite(a)) throw BoundaryZeroError("winding: non-finite value on contour " + rect.str());
    if (a == 0.0) throw BoundaryZeroError("winding: exact zero on contour " + rect.str());
    min_mod = std::min(min_mod, a);
    max_mod = std::max(max_mod, a);
    return v;
  }

  double track(cplx za, cplx fa, cplx zb, cplx fb, int depth) {
    if (depth > opt.max_depth)
      throw BoundaryZeroError("winding: phase not resolved near " + rect.str());
    const double d = std::arg(fb / fa);
    const cplx zm = 0.5 * (za + zb);
    const cplx fm = eval(zm);
    if (std::abs(d) < opt.max_step_angle) {
      const double d1 = std::arg(fm / fa), d2 = std::arg(fb / fm);
      if (std::abs(d1) < opt.max_step_angle && std::abs(d2) < opt.max_step_angle &&
          std::abs(d1 + d2 - d) < 1e-6)
        return d1 + d2;
    }
    return track(za, fa, zm, fm, depth + 1) + track(zm, fm, zb, fb, depth + 1);
  }
};

}  // namespace

WindingResult count_zeros_in_rect(const EntireFn& f, const Rect& r, const WindingOptions& opt) {
  if (!(r.re_hi > r.re_lo && r.im_hi > r.im_lo))
    throw std::invalid_argument("winding: degenerate rectangle " + r.str());
  Tracker tr{f, opt, r};
  const cplx corner[5] = {{r.re_lo, r.im_lo}, {r.re_hi, r.im_lo}, {r.re_hi, r.im_hi},
                          {r.re_lo, r.im_hi}, {r.re_lo, r.im_lo}};
  const int ns = opt.initial_segments;
  double total = 0.0;
  cplx z_prev = corner[0];
  cplx f_prev = tr.eval(z_prev);
  const cplx f_start = f_prev;
  for (int side = 0; side < 4; ++side) {
    for (int k = 1; k <= ns; ++k) {
      const bool closing = side == 3 && k == ns;
      const cplx z = corner[side] + (corner[side + 1] - corner[side]) * (static_cast<double>(k) / ns);
      const cplx fz = closing ? f_start : tr.eval(z);
      total += tr.track(z_prev, f_prev, z, fz, 0);
      z_prev = z;
      f_prev = fz;
    }
  }
  if (tr.min_mod < opt.min_modulus_rel * tr.max_mod)
    throw BoundaryZeroError("winding: modulus dips near contour " + r.str());
  const double turns = total / (2.0 * std::numbers::pi);
  const long c = std::lround(turns);
  if (std::abs(turns - static_cast<double>(c)) > 1e-3)
    throw BoundaryZeroError("winding: non-integer winding on " + r.str());
  WindingResult w;
  w.count = static_cast<int>(c);
  w.max_modulus = tr.max_mod;
  w.min_modulus = tr.min_mod;
  w.evaluations = tr.evals;
  return w;
}

}  // namespace delaygraph
