#pragma once

#include <vector>

#include "delaygraph/product.hpp"
#include "delaygraph/zeros.hpp"

namespace delaygraph {

struct MomentRow {
  int j = 2;
  int nu = 0;
  std::vector<double> xi;
  std::vector<cplx> eta;
  std::vector<double> alpha;
  std::vector<double> gamma;
  std::vector<double> beta;
};

// rows[j-2][nu]
struct MomentTable {
  int N = 0;
  std::vector<std::vector<MomentRow>> rows;
  const MomentRow& row(int j, int nu) const { return rows.at(static_cast<std::size_t>(j - 2)).at(static_cast<std::size_t>(nu)); }
};

inline constexpr double kAlphaTolerance = 1e-8;

MomentRow compute_moments(int j, int nu, const ProductCharFn& delta_hat, const ProblemConfig& cfg, int N);
MomentRow compute_moments(int j, int nu, const ProductCharFn& delta_hat, const ProblemConfig& cfg,
                          const VZeros& zeros, int N);

}  // namespace delaygraph
