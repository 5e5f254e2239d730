#include "delaygraph/transforms.hpp"

#include <stdexcept>

namespace delaygraph {

GridFunction p_from_q(const GridFunction& q, double H) {
  const auto tail = cumulative_from_right(q.values, q.step());
  std::vector<double> p(q.values.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = q.values[i] - 2.0 * H * tail[i];
  return GridFunction(q.x0, q.x1, std::move(p));
}

void u_from_p(const GridFunction& p, double a, GridFunction& u0, GridFunction& u1) {
  const int P = p.size();
  if (P % 2 == 0) throw std::invalid_argument("transforms: p grid needs an odd sample count");
  const int c = (P - 1) / 2;  // index of a/2
  // p at half-integer index 2*c+k over 2
  auto at_half = [&](int twice) {
    return twice % 2 == 0 ? p[twice / 2] : p.midpoint((twice - 1) / 2);
  };
  std::vector<double> v0(P), v1(P);
  for (int k = 0; k < P; ++k) {
    const double plus = at_half(2 * c + k);
    const double minus = at_half(2 * c - k);
    v0[k] = 0.25 * (plus - minus);
    v1[k] = 0.25 * (plus + minus);
  }
  u0 = GridFunction(0.0, 2.0 - a, std::move(v0));
  u1 = GridFunction(0.0, 2.0 - a, std::move(v1));
}

EdgeTransforms edge_transforms_from_q(const PotentialSet& q) {
  q.validate();
  EdgeTransforms t;
  t.cfg = q.cfg;
  for (int j = 2; j <= q.cfg.m; ++j) {
    EdgeTransform e;
    e.H = q.cfg.H_of(j);
    const GridFunction& qj = q.edge(j);
    e.omega = qj.integral();
    e.vanishes = true;
    for (double v : qj.values) e.vanishes = e.vanishes && v == 0.0;
    e.u_zero = e.vanishes;
    e.p = p_from_q(qj, e.H);
    u_from_p(e.p, q.cfg.a, e.u0, e.u1);
    t.edges.push_back(std::move(e));
  }
  return t;
}

EdgeTransforms omega_model_transforms(const ProblemConfig& cfg, const std::vector<double>& omega) {
  cfg.validate();
  if (static_cast<int>(omega.size()) != cfg.m - 1)
    throw std::invalid_argument("omega_model_transforms: need one omega per edge j = 2..m");
  EdgeTransforms t;
  t.cfg = cfg;
  const double L = cfg.u_length();
  for (int j = 2; j <= cfg.m; ++j) {
    EdgeTransform e;
    e.H = cfg.H_of(j);
    e.omega = omega[j - 2];
    e.u_zero = true;
    e.vanishes = e.omega == 0.0;
    e.p = GridFunction::zeros(cfg.a - 1.0, 1.0, 3);
    e.u0 = GridFunction::zeros(0.0, L, 3);
    e.u1 = GridFunction::zeros(0.0, L, 3);
    t.edges.push_back(std::move(e));
  }
  return t;
}

}  // namespace delaygraph
