#pragma once

#include "bwreg/geometry.hpp"

namespace bwreg {

// Existence diagnostics for a signed barycenter problem.
//
// holds: spectral dominance of positive weights,
//   sum_i lambda_i^+ sqrt(lambda_min(Sigma_i)) >
//   sum_j lambda_j^- sqrt(lambda_max(Sigma_j)).
// sgd_holds: the stricter per-pair condition
//   mu_+ min_i sqrt(lambda_min(Sigma_i)) > mu_- max_j sqrt(lambda_max(Sigma_j)).
// stationary_lower/upper: squared bounds bracketing every stationary
// point's eigenvalues when the dominance condition holds.
struct ExistenceReport {
  double a_min = 0.0;
  double b_max = 0.0;
  double margin = 0.0;
  bool holds = false;
  double sgd_margin = 0.0;
  bool sgd_holds = false;
  double stationary_lower = 0.0;
  double stationary_upper = 0.0;
};

ExistenceReport check_existence(const SignedBarycenterProblem& prob);

// Frobenius norm of S - sum_k lambda_k (S^{1/2} Sigma_k S^{1/2})^{1/2};
// zero exactly at stationary points.
double stationarity_residual(const SignedBarycenterProblem& prob, const SpdMatrix& s);

// Closed-form stationary point for pairwise-commuting matrices: in the
// common eigenbasis each direction solves to (sum_k lambda_k sqrt(sigma_kl))^2.
// Throws NotCommuting if the family does not commute and NegativeDirection
// if some directional weighted root sum is nonpositive.
SpdMatrix commuting_oracle(const SignedBarycenterProblem& prob,
                           double commute_tolerance_scale = 1e-9);

struct UniquenessReport {
  // (i) all data within r of center, (ii) r < rho/(mu_+ + mu_-),
  // (iii) rho < sqrt(lambda)/2, (iv) ball stays above the eigenvalue floor
  // (sampled along geodesics, sufficient only), (v) mass-ratio condition.
  bool data_in_ball = false;
  bool r_small_enough = false;
  bool rho_below_injectivity = false;
  bool ball_in_submanifold = false;
  bool mass_ratio_ok = false;
  bool all_hold = false;
  double lambda_floor = 0.0;
  double curvature_bound = 0.0;
};

// Evaluates the five uniqueness-ball conditions for a candidate center and
// radii. Condition (iv) is verified on a 32-point discretization of the
// geodesics from the center towards each data matrix, extended to radius
// rho; a true flag is sampled evidence, not a certificate.
UniquenessReport check_uniqueness_ball(const SignedBarycenterProblem& prob,
                                       const SpdMatrix& center, double rho, double r);

// Injectivity radius sqrt(lambda) of the eigenvalue-floored submanifold.
double injectivity_radius(double lambda_floor);

}  // namespace bwreg
