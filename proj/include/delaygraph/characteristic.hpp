#pragma once

#include "delaygraph/transforms.hpp"

namespace delaygraph {

// int_0^L u(x) cos(rho x) dx and int_0^L u(x) sin(rho x) dx on the grid of u
// (Filon: u piecewise quadratic, trigonometric factor exact)
struct TrigMoments {
  cplx c;
  cplx s;
};
TrigMoments filon_moments(const GridFunction& u, cplx rho);

// int_0^L u(x) S_nu(x, lambda) dx
cplx integrate_u_S(const GridFunction& u, int nu, const SpectralParam& s);

cplx eval_VQ(int j, int nu, const SpectralParam& s, const EdgeTransforms& t);
cplx eval_delta(int nu, const SpectralParam& s, const EdgeTransforms& t);

}  // namespace delaygraph
