#include "bwreg/frechet.hpp"

namespace bwreg {

RegressionDataset::RegressionDataset(std::vector<VectorXd> covariates,
                                     std::vector<SpdMatrix> responses)
    : covariates_(std::move(covariates)), responses_(std::move(responses)) {
  if (covariates_.size() < 2) throw InvalidInput("dataset needs at least two samples");
  if (covariates_.size() != responses_.size())
    throw InvalidInput("covariate/response count mismatch");
  const auto p = covariates_.front().size();
  for (const VectorXd& x : covariates_)
    if (x.size() != p) throw DimensionError("covariates must share one dimension");
  const int d = responses_.front().dim();
  for (const SpdMatrix& y : responses_)
    if (y.dim() != d) throw DimensionError("responses must share one dimension");
}

CovariateMoments fit_moments(const std::vector<VectorXd>& covariates) {
  if (covariates.size() < 2) throw InvalidInput("fit_moments needs at least two samples");
  const auto n = static_cast<double>(covariates.size());
  const auto p = covariates.front().size();

  VectorXd mean = VectorXd::Zero(p);
  for (const VectorXd& x : covariates) mean += x;
  mean /= n;

  MatrixXd cov = MatrixXd::Zero(p, p);
  for (const VectorXd& x : covariates) {
    const VectorXd c = x - mean;
    cov += c * c.transpose();
  }
  cov /= n;  // population normalization

  Eigendecomposition e = sym_eig(cov);
  const double lmax = e.eigenvalues(p - 1);
  const double lmin = e.eigenvalues(0);
  if (!(lmax > 0.0) || lmin <= lmax * 1e-12)
    throw SingularCovariance("covariate covariance is singular");
  VectorXd inv = e.eigenvalues.cwiseInverse();
  return {mean, cov, e.eigenvectors * inv.asDiagonal() * e.eigenvectors.transpose()};
}

WeightSet global_weights(const VectorXd& x, const CovariateMoments& moments,
                         const std::vector<VectorXd>& covariates) {
  if (x.size() != moments.mean.size())
    throw DimensionError("global_weights: query dimension mismatch");
  const auto n = static_cast<double>(covariates.size());
  const VectorXd centered_query = moments.inverse_covariance * (x - moments.mean);
  WeightSet ws;
  ws.s.reserve(covariates.size());
  ws.lambda.reserve(covariates.size());
  for (const VectorXd& xk : covariates) {
    const double s = 1.0 + (xk - moments.mean).dot(centered_query);
    ws.s.push_back(s);
    ws.lambda.push_back(s / n);
  }
  return ws;
}

Prediction predict(const VectorXd& x, const RegressionDataset& dataset,
                   const SolverConfig& config) {
  const CovariateMoments moments = fit_moments(dataset.covariates());
  WeightSet weights = global_weights(x, moments, dataset.covariates());
  SignedBarycenterProblem prob(dataset.responses(), weights.lambda);
  SolverResult result = solve(prob, config);
  return Prediction{std::move(result.solution), std::move(result.trace),
                    result.termination, result.existence, std::move(weights)};
}

}  // namespace bwreg
