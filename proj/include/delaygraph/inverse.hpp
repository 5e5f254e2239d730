#pragma once

#include <vector>

#include "delaygraph/moments.hpp"
#include "delaygraph/potential.hpp"
#include "delaygraph/reconstruct.hpp"
#include "delaygraph/spectrum.hpp"

namespace delaygraph {

// Which entire function supplies the zeros beyond the given spectrum.
enum class TailModel {
  unperturbed,    // Delta00
  known_h,        // Delta0 (q = 0, the known H)
  omega_refined,  // q = 0 plus the omega terms, omega from a known_h pass
};

struct InverseOptions {
  TailModel tail = TailModel::omega_refined;
  int refine_passes = 1;
  int grid_points = kDefaultGridPoints;
  UMethod method = UMethod::smooth_fit;
  int trial_dim = 0;          // 0: max(4, N/4)
  double reach_factor = 1.5;  // spectra must reach rho >= reach_factor * eta_N
  double max_condition = 1e8;
};

struct EdgeReconstruction {
  int j = 2;
  double H = 0.0;
  OmegaFit omega;
  URecovery u0;
  URecovery u1;
  GridFunction p;
  GridFunction q;
  // filled by compare_with_truth
  bool has_truth = false;
  double omega_true = 0.0;
  double q_l2_error = 0.0;      // relative when the true q is nonzero
  double q_l2_norm_true = 0.0;
};

struct ReconstructionReport {
  ProblemConfig cfg;
  int N = 0;
  int K0 = 0;
  int K1 = 0;
  InverseOptions options;
  double alpha_tolerance = kAlphaTolerance;
  MomentTable moments;
  std::vector<double> tail_omega;  // omega used by the final tail model
  std::vector<EdgeReconstruction> edges;

  const EdgeReconstruction& edge(int j) const { return edges.at(static_cast<std::size_t>(j - 2)); }
};

ReconstructionReport invert_all(const std::vector<cplx>& spec0, const std::vector<cplx>& spec1,
                                const ProblemConfig& cfg, int N, const InverseOptions& opt = {});
ReconstructionReport invert_all(const Spectrum& spec0, const Spectrum& spec1, const ProblemConfig& cfg,
                                int N, const InverseOptions& opt = {});

// spectrum size needed for N moments per edge
int required_spectrum_size(const ProblemConfig& cfg, int N, double factor = 2.0);

void compare_with_truth(ReconstructionReport& report, const PotentialSet& truth);

}  // namespace delaygraph
