#pragma once

#include <vector>

#include "bwreg/solvers.hpp"

namespace bwreg {

// Paired Euclidean covariates and SPD responses.
class RegressionDataset {
 public:
  RegressionDataset(std::vector<VectorXd> covariates, std::vector<SpdMatrix> responses);

  int size() const { return static_cast<int>(covariates_.size()); }
  int covariate_dim() const { return static_cast<int>(covariates_.front().size()); }
  int response_dim() const { return responses_.front().dim(); }
  const std::vector<VectorXd>& covariates() const { return covariates_; }
  const std::vector<SpdMatrix>& responses() const { return responses_; }

 private:
  std::vector<VectorXd> covariates_;
  std::vector<SpdMatrix> responses_;
};

// Sample mean and (1/n-normalized) covariance of the covariates, with a
// cached inverse.
struct CovariateMoments {
  VectorXd mean;
  MatrixXd covariance;
  MatrixXd inverse_covariance;
};

// Throws SingularCovariance when the covariance condition number exceeds 1e12.
CovariateMoments fit_moments(const std::vector<VectorXd>& covariates);

struct WeightSet {
  std::vector<double> s;       // raw weights s_k(x) = 1 + (X_k - mean)' Cov^-1 (x - mean)
  std::vector<double> lambda;  // s_k / n; sums to one
};

WeightSet global_weights(const VectorXd& x, const CovariateMoments& moments,
                         const std::vector<VectorXd>& covariates);

struct Prediction {
  SpdMatrix estimate;
  SolverTrace trace;
  Termination termination;
  ExistenceReport existence;
  WeightSet weights;
};

// Global Fréchet prediction at a query covariate: compute weights, check
// well-posedness, run the configured solver.
Prediction predict(const VectorXd& x, const RegressionDataset& dataset,
                   const SolverConfig& config);

}  // namespace bwreg
