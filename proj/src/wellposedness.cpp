#include "bwreg/wellposedness.hpp"

#include <cmath>

namespace bwreg {

ExistenceReport check_existence(const SignedBarycenterProblem& prob) {
  ExistenceReport report;
  double a_max_side = 0.0;  // sum_i lambda_i^+ sqrt(lambda_max)
  double b_min_side = 0.0;  // sum_j lambda_j^- sqrt(lambda_min)
  double min_pos_root = std::numeric_limits<double>::infinity();
  double max_neg_root = 0.0;
  for (int i : prob.positive_indices()) {
    const SpdMatrix& m = prob.matrices()[i];
    report.a_min += prob.weights()[i] * std::sqrt(m.min_eigenvalue());
    a_max_side += prob.weights()[i] * std::sqrt(m.max_eigenvalue());
    min_pos_root = std::min(min_pos_root, std::sqrt(m.min_eigenvalue()));
  }
  for (int j : prob.negative_indices()) {
    const SpdMatrix& m = prob.matrices()[j];
    report.b_max += -prob.weights()[j] * std::sqrt(m.max_eigenvalue());
    b_min_side += -prob.weights()[j] * std::sqrt(m.min_eigenvalue());
    max_neg_root = std::max(max_neg_root, std::sqrt(m.max_eigenvalue()));
  }
  report.margin = report.a_min - report.b_max;
  report.holds = report.margin > 0.0;
  report.sgd_margin =
      prob.positive_mass() * min_pos_root - prob.negative_mass() * max_neg_root;
  report.sgd_holds = report.sgd_margin > 0.0;
  if (report.holds) {
    report.stationary_lower = report.margin * report.margin;
    const double upper_root = a_max_side - b_min_side;
    report.stationary_upper = upper_root * upper_root;
  }
  return report;
}

double stationarity_residual(const SignedBarycenterProblem& prob, const SpdMatrix& s) {
  if (s.dim() != prob.dim())
    throw DimensionError("stationarity_residual: dimension mismatch");
  const MatrixXd s_half = s.sqrt();
  MatrixXd sum = MatrixXd::Zero(s.dim(), s.dim());
  for (int k = 0; k < prob.size(); ++k)
    sum += prob.weights()[k] * psd_sqrt(s_half * prob.matrices()[k].mat() * s_half);
  return (s.mat() - sum).norm();
}

SpdMatrix commuting_oracle(const SignedBarycenterProblem& prob,
                           double commute_tolerance_scale) {
  const auto& mats = prob.matrices();
  for (size_t a = 0; a < mats.size(); ++a) {
    for (size_t b = a + 1; b < mats.size(); ++b) {
      const MatrixXd comm = mats[a].mat() * mats[b].mat() - mats[b].mat() * mats[a].mat();
      const double tol =
          commute_tolerance_scale * mats[a].mat().norm() * mats[b].mat().norm();
      if (comm.norm() > tol)
        throw NotCommuting("matrices " + std::to_string(a) + " and " +
                           std::to_string(b) + " do not commute");
    }
  }
  // A generic fixed-coefficient combination has the same eigenvectors as the
  // whole family and breaks accidental degeneracies between members.
  const int d = prob.dim();
  MatrixXd probe = MatrixXd::Zero(d, d);
  for (int k = 0; k < prob.size(); ++k)
    probe += std::cos(1.2345 * (k + 1)) * mats[k].mat();
  probe += 0.5 * mats[0].mat();
  Eigendecomposition basis = sym_eig(probe);

  VectorXd solution_eigs(d);
  for (int l = 0; l < d; ++l) {
    const VectorXd v = basis.eigenvectors.col(l);
    double s = 0.0;
    for (int k = 0; k < prob.size(); ++k) {
      const double sigma = v.dot(mats[k].mat() * v);
      if (sigma <= 0.0) throw NotSpdResult("commuting_oracle: nonpositive direction");
      s += prob.weights()[k] * std::sqrt(sigma);
    }
    if (s <= 0.0)
      throw NegativeDirection("commuting_oracle: nonpositive weighted root sum in direction " +
                              std::to_string(l));
    solution_eigs(l) = s * s;
  }
  return SpdMatrix(basis.eigenvectors * solution_eigs.asDiagonal() *
                   basis.eigenvectors.transpose());
}

UniquenessReport check_uniqueness_ball(const SignedBarycenterProblem& prob,
                                       const SpdMatrix& center, double rho, double r) {
  if (rho <= 0.0 || r <= 0.0) throw NonPositive("check_uniqueness_ball: radii must be positive");
  UniquenessReport report;
  double lambda = std::numeric_limits<double>::infinity();
  for (const SpdMatrix& m : prob.matrices())
    lambda = std::min(lambda, m.min_eigenvalue());
  report.lambda_floor = lambda;
  report.curvature_bound = 1.5 / lambda;

  report.data_in_ball = true;
  for (const SpdMatrix& m : prob.matrices())
    if (bw_distance(m, center) >= r) report.data_in_ball = false;

  report.r_small_enough = r < rho / (prob.positive_mass() + prob.negative_mass());
  report.rho_below_injectivity = rho < 0.5 * std::sqrt(lambda);

  // Condition (iv), sampled: walk the geodesic from the center towards each
  // data matrix out to radius rho and require the eigenvalue floor at every
  // sample. Sufficient evidence only, not a ball certificate.
  constexpr int kSamples = 32;
  report.ball_in_submanifold = true;
  for (const SpdMatrix& m : prob.matrices()) {
    const double dist = bw_distance(center, m);
    if (dist == 0.0) continue;
    const double t_max = rho / dist;
    for (int s = 1; s <= kSamples; ++s) {
      const double t = t_max * s / kSamples;
      try {
        if (geodesic(center, m, t).min_eigenvalue() < lambda * (1.0 - 1e-12))
          report.ball_in_submanifold = false;
      } catch (const NotSpdResult&) {
        report.ball_in_submanifold = false;
      }
      if (!report.ball_in_submanifold) break;
    }
    if (!report.ball_in_submanifold) break;
  }

  if (prob.negative_mass() == 0.0) {
    report.mass_ratio_ok = true;  // ratio is +infinity
  } else {
    const double x = 2.0 * rho * std::sqrt(report.curvature_bound);
    report.mass_ratio_ok =
        prob.positive_mass() / prob.negative_mass() > x / std::tanh(x);
  }

  report.all_hold = report.data_in_ball && report.r_small_enough &&
                    report.rho_below_injectivity && report.ball_in_submanifold &&
                    report.mass_ratio_ok;
  return report;
}

double injectivity_radius(double lambda_floor) {
  if (lambda_floor <= 0.0) throw NonPositive("injectivity_radius: lambda must be positive");
  return std::sqrt(lambda_floor);
}

}  // namespace bwreg
