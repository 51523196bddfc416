#include "bwreg/geometry.hpp"

#include <cmath>

namespace bwreg {

namespace {

constexpr double kWeightSumTolerance = 1e-12;
constexpr double kNegativeClamp = 1e-10;

void require_same_dim(const SpdMatrix& a, const SpdMatrix& b, const char* op) {
  if (a.dim() != b.dim()) throw DimensionError(std::string(op) + ": dimension mismatch");
}

}  // namespace

SignedBarycenterProblem::SignedBarycenterProblem(std::vector<SpdMatrix> matrices,
                                                std::vector<double> weights)
    : matrices_(std::move(matrices)), weights_(std::move(weights)) {
  if (matrices_.empty()) throw InvalidInput("problem needs at least one matrix");
  if (matrices_.size() != weights_.size())
    throw InvalidInput("matrix/weight count mismatch");
  const int d = matrices_.front().dim();
  double sum = 0.0;
  for (size_t k = 0; k < matrices_.size(); ++k) {
    if (matrices_[k].dim() != d)
      throw DimensionError("problem matrices must share one dimension");
    const double w = weights_[k];
    if (!std::isfinite(w)) throw InvalidInput("non-finite weight");
    sum += w;
    if (w > 0.0) {
      positive_.push_back(static_cast<int>(k));
      mu_plus_ += w;
    } else if (w < 0.0) {
      negative_.push_back(static_cast<int>(k));
      mu_minus_ -= w;
    }
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw InvalidInput("weights must sum to 1 (got " + std::to_string(sum) + ")");
  if (positive_.empty()) throw InvalidInput("at least one weight must be positive");
}

double bw_distance_sq(const SpdMatrix& a, const SpdMatrix& b) {
  require_same_dim(a, b, "bw_distance_sq");
  const MatrixXd a_half = a.sqrt();
  Eigendecomposition inner = sym_eig(a_half * b.mat() * a_half);
  const double cross = inner.eigenvalues.array().max(0.0).sqrt().sum();
  double value = a.trace() + b.trace() - 2.0 * cross;
  if (value < 0.0) {
    if (value < -kNegativeClamp)
      throw InvalidInput("bw_distance_sq: large negative value " + std::to_string(value));
    value = 0.0;
  }
  return value;
}

SpdMatrix transport_map(const SpdMatrix& a, const SpdMatrix& b) {
  require_same_dim(a, b, "transport_map");
  const MatrixXd a_half = a.sqrt();
  const MatrixXd a_inv_half = a.inv_sqrt();
  const MatrixXd inner = psd_sqrt(a_half * b.mat() * a_half);
  return SpdMatrix(a_inv_half * inner * a_inv_half);
}

SpdMatrix geodesic(const SpdMatrix& a, const SpdMatrix& b, double t) {
  const SpdMatrix T = transport_map(a, b);
  const MatrixXd factor =
      (1.0 - t) * MatrixXd::Identity(a.dim(), a.dim()) + t * T.mat();
  const MatrixXd result = factor * a.mat() * factor.transpose();
  SpdReport check = is_spd(result, kSpdTolerance * std::max(1.0, result.norm()));
  if (!check.verdict)
    throw NotSpdResult("geodesic left the SPD cone at t=" + std::to_string(t));
  return SpdMatrix(result);
}

MatrixXd lyapunov_solve(const SpdMatrix& x, const MatrixXd& u) {
  if (x.dim() != u.rows() || u.rows() != u.cols())
    throw DimensionError("lyapunov_solve: shape mismatch");
  const MatrixXd& v = x.eigenvectors();
  const VectorXd& w = x.eigenvalues();
  MatrixXd u_hat = v.transpose() * 0.5 * (u + u.transpose()) * v;
  for (int i = 0; i < x.dim(); ++i)
    for (int j = 0; j < x.dim(); ++j) u_hat(i, j) /= w(i) + w(j);
  return v * u_hat * v.transpose();
}

double bw_inner(const SpdMatrix& x, const MatrixXd& u, const MatrixXd& v) {
  if (u.rows() != x.dim() || v.rows() != x.dim())
    throw DimensionError("bw_inner: shape mismatch");
  return 0.5 * (lyapunov_solve(x, u) * v).trace();
}

SpdMatrix bw_exp(const SpdMatrix& x, const MatrixXd& u) {
  const MatrixXd factor =
      MatrixXd::Identity(x.dim(), x.dim()) + lyapunov_solve(x, u);
  const MatrixXd result = factor * x.mat() * factor.transpose();
  SpdReport check = is_spd(result, kSpdTolerance * std::max(1.0, result.norm()));
  if (!check.verdict) throw NotSpdResult("bw_exp: I + L_X[U] is singular");
  return SpdMatrix(result);
}

MatrixXd bw_log(const SpdMatrix& x, const SpdMatrix& y) {
  const MatrixXd diff =
      transport_map(x, y).mat() - MatrixXd::Identity(x.dim(), x.dim());
  return diff * x.mat() + x.mat() * diff;
}

double objective(const SignedBarycenterProblem& prob, const SpdMatrix& s) {
  if (s.dim() != prob.dim()) throw DimensionError("objective: dimension mismatch");
  double value = 0.0;
  for (int k = 0; k < prob.size(); ++k)
    value += prob.weights()[k] * bw_distance_sq(s, prob.matrices()[k]);
  return value;
}

MatrixXd euclidean_gradient(const SignedBarycenterProblem& prob, const SpdMatrix& s) {
  if (s.dim() != prob.dim())
    throw DimensionError("euclidean_gradient: dimension mismatch");
  // GM(S^{-1}, Sigma_k) = S^{-1/2} (S^{1/2} Sigma_k S^{1/2})^{1/2} S^{-1/2};
  // the factors of S are shared across all k.
  const MatrixXd s_half = s.sqrt();
  const MatrixXd s_inv_half = s.inv_sqrt();
  MatrixXd sum = MatrixXd::Zero(s.dim(), s.dim());
  for (int k = 0; k < prob.size(); ++k) {
    const MatrixXd inner = psd_sqrt(s_half * prob.matrices()[k].mat() * s_half);
    sum += prob.weights()[k] * inner;
  }
  return MatrixXd::Identity(s.dim(), s.dim()) - s_inv_half * sum * s_inv_half;
}

MatrixXd bw_gradient(const SpdMatrix& s, const MatrixXd& euclid_grad) {
  if (euclid_grad.rows() != s.dim() || euclid_grad.cols() != s.dim())
    throw DimensionError("bw_gradient: shape mismatch");
  return 2.0 * (euclid_grad * s.mat() + s.mat() * euclid_grad);
}

double bw_gradient_norm(const SpdMatrix& s, const MatrixXd& euclid_grad) {
  const MatrixXd g = bw_gradient(s, euclid_grad);
  return std::sqrt(std::max(0.0, bw_inner(s, g, g)));
}

double curvature_upper_bound(const SpdMatrix& s) {
  const double lmin = s.min_eigenvalue();
  if (lmin <= 0.0) throw NearSingular("curvature_upper_bound: nonpositive eigenvalue");
  return 1.5 / lmin;
}

}  // namespace bwreg
