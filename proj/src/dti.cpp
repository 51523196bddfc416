#include "bwreg/dti.hpp"

#include <cmath>

namespace bwreg {

Eigen::Vector3d helix_tangent(double t, const HelixParams& params) {
  Eigen::Vector3d v(-params.radius * std::sin(t), params.radius * std::cos(t),
                    params.pitch);
  return v.normalized();
}

SpdMatrix helix_tensor(double t, const HelixParams& params) {
  if (params.lambda_perp <= 0.0 || params.lambda_parallel < params.lambda_perp)
    throw InvalidInput("helix tensor eigenvalues must satisfy parallel >= perp > 0");
  const Eigen::Vector3d e1 = helix_tangent(t, params);
  // e2 via the z axis; the helix tangent never aligns with z.
  Eigen::Vector3d e2 = e1.cross(Eigen::Vector3d::UnitZ());
  if (e2.norm() < 1e-12) throw InvalidInput("helix tangent parallel to z axis");
  e2.normalize();
  const Eigen::Vector3d e3 = e1.cross(e2);
  Eigen::Matrix3d rot;
  rot.col(0) = e1;
  rot.col(1) = e2;
  rot.col(2) = e3;
  const Eigen::Vector3d diag(params.lambda_parallel, params.lambda_perp,
                             params.lambda_perp);
  return SpdMatrix(rot * diag.asDiagonal() * rot.transpose());
}

RegressionDataset generate_helix_dataset(const HelixParams& params) {
  if (params.n < 2) throw InvalidInput("helix dataset needs n >= 2");
  std::vector<VectorXd> covariates;
  std::vector<SpdMatrix> responses;
  covariates.reserve(params.n);
  responses.reserve(params.n);
  for (int k = 0; k < params.n; ++k) {
    const double t = params.t_min + (params.t_max - params.t_min) * k / (params.n - 1);
    covariates.push_back(VectorXd::Constant(1, t));
    responses.push_back(helix_tensor(t, params));
  }
  return RegressionDataset(std::move(covariates), std::move(responses));
}

std::vector<DtiTargetResult> run_dti_experiment(const HelixParams& params,
                                                const std::vector<int>& targets,
                                                const SolverConfig& config,
                                                int runs) {
  if (runs < 1) throw InvalidInput("run count must be positive");
  const RegressionDataset full = generate_helix_dataset(params);
  for (int target : targets)
    if (target < 0 || target >= full.size())
      throw InvalidInput("target index out of range");

  std::vector<DtiTargetResult> results;
  for (int target : targets) {
    std::vector<VectorXd> covariates;
    std::vector<SpdMatrix> responses;
    covariates.reserve(full.size() - 1);
    responses.reserve(full.size() - 1);
    for (int k = 0; k < full.size(); ++k) {
      if (k == target) continue;
      covariates.push_back(full.covariates()[k]);
      responses.push_back(full.responses()[k]);
    }
    const RegressionDataset holdout(std::move(covariates), std::move(responses));
    const VectorXd query = full.covariates()[target];
    const SpdMatrix& truth = full.responses()[target];

    DtiTargetResult tr;
    tr.target_index = target;
    tr.covariate = query(0);
    std::optional<SpdMatrix> last_estimate;
    for (int run = 0; run < runs; ++run) {
      SolverConfig run_config = config;
      run_config.seed = config.seed + static_cast<std::uint64_t>(run);
      Prediction pred = predict(query, holdout, run_config);
      DtiRunCurve curve;
      curve.seed = run_config.seed;
      for (const TraceRecord& rec : pred.trace) {
        curve.iters.push_back(rec.iter);
        curve.objectives.push_back(rec.objective);
      }
      tr.runs.push_back(std::move(curve));
      last_estimate = std::move(pred.estimate);
    }

    const size_t records = tr.runs.front().objectives.size();
    tr.mean_objective.assign(records, 0.0);
    tr.std_objective.assign(records, 0.0);
    for (const DtiRunCurve& curve : tr.runs)
      for (size_t r = 0; r < records; ++r) tr.mean_objective[r] += curve.objectives[r];
    for (double& v : tr.mean_objective) v /= runs;
    for (const DtiRunCurve& curve : tr.runs)
      for (size_t r = 0; r < records; ++r) {
        const double d = curve.objectives[r] - tr.mean_objective[r];
        tr.std_objective[r] += d * d;
      }
    for (double& v : tr.std_objective) v = std::sqrt(v / runs);

    tr.bw_error_vs_truth = bw_distance(*last_estimate, truth);
    tr.final_estimate = std::move(*last_estimate);
    results.push_back(std::move(tr));
  }
  return results;
}

}  // namespace bwreg
