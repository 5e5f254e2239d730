#pragma once

#include "delaygraph/config.hpp"

namespace delaygraph {

// |rho x| below this uses the Maclaurin series in lambda
inline constexpr double kSeriesThreshold = 0.5;

cplx eval_S(int nu, double x, const SpectralParam& s);
cplx eval_S_x(int nu, double x, const SpectralParam& s);
cplx eval_S_dlambda(int nu, double x, const SpectralParam& s, int order);

// direct forms, exposed for the seam tests
cplx eval_S_series(int nu, double x, cplx lambda);
cplx eval_S_trig(int nu, double x, cplx rho);

cplx eval_v(int j, int nu, const SpectralParam& s, const ProblemConfig& cfg);

cplx eval_delta00(int nu, const SpectralParam& s, const ProblemConfig& cfg);
cplx eval_delta00_factored(int nu, const SpectralParam& s, int m);

// Delta_nu^0: q = 0 but H as configured
cplx eval_delta0(int nu, const SpectralParam& s, const ProblemConfig& cfg);

}  // namespace delaygraph
