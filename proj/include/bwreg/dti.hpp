#pragma once

#include "bwreg/frechet.hpp"

namespace bwreg {

struct HelixParams {
  double radius = 10.0;
  double pitch = 5.0;
  double t_min = 0.0;
  double t_max = 2.0 * 3.14159265358979323846;
  int n = 100000;
  double lambda_parallel = 3.0;
  double lambda_perp = 1.5;
};

// Unit tangent of the helix (r cos t, r sin t, p t).
Eigen::Vector3d helix_tangent(double t, const HelixParams& params = {});

// Prolate tensor with its principal axis along the helix tangent; the
// orthonormal frame is completed deterministically via the z axis.
SpdMatrix helix_tensor(double t, const HelixParams& params);

// Covariates equally spaced on [t_min, t_max], responses helix_tensor(t_k).
RegressionDataset generate_helix_dataset(const HelixParams& params);

struct DtiRunCurve {
  std::uint64_t seed = 0;
  std::vector<int> iters;
  std::vector<double> objectives;
};

struct DtiTargetResult {
  int target_index = 0;
  double covariate = 0.0;
  std::vector<DtiRunCurve> runs;
  std::vector<double> mean_objective;  // across runs, per record
  std::vector<double> std_objective;
  std::optional<SpdMatrix> final_estimate;  // from the last run
  double bw_error_vs_truth = 0.0;           // BW distance to the held-out tensor
};

// Leave-one-out regression at each target index using all other samples;
// `runs` independent solver runs per target with seeds config.seed + run.
std::vector<DtiTargetResult> run_dti_experiment(const HelixParams& params,
                                                const std::vector<int>& targets,
                                                const SolverConfig& config,
                                                int runs);

}  // namespace bwreg
