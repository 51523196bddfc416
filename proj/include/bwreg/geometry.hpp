#pragma once

#include <vector>

#include "bwreg/matrix.hpp"

namespace bwreg {

// Tangent vector at a base point; directions live in Sym(d).
struct TangentVector {
  SpdMatrix base_point;
  MatrixXd direction;  // symmetric
};

// Weighted collection of SPD matrices with real weights summing to one.
// Negative weights are allowed (extrapolation regime); at least one
// weight must be positive.
class SignedBarycenterProblem {
 public:
  SignedBarycenterProblem(std::vector<SpdMatrix> matrices, std::vector<double> weights);

  int size() const { return static_cast<int>(matrices_.size()); }
  int dim() const { return matrices_.front().dim(); }
  const std::vector<SpdMatrix>& matrices() const { return matrices_; }
  const std::vector<double>& weights() const { return weights_; }

  // Index sets of positive / negative weights.
  const std::vector<int>& positive_indices() const { return positive_; }
  const std::vector<int>& negative_indices() const { return negative_; }
  double positive_mass() const { return mu_plus_; }   // sum of positive weights
  double negative_mass() const { return mu_minus_; }  // sum of |negative weights|
  // Sum of |lambda_k|; the smoothness constant of the objective.
  double smoothness_constant() const { return mu_plus_ + mu_minus_; }

 private:
  std::vector<SpdMatrix> matrices_;
  std::vector<double> weights_;
  std::vector<int> positive_;
  std::vector<int> negative_;
  double mu_plus_ = 0.0;
  double mu_minus_ = 0.0;
};

// Squared Bures-Wasserstein distance
//   W2^2(A,B) = Tr A + Tr B - 2 Tr((A^{1/2} B A^{1/2})^{1/2}).
// Small negative roundoff is clamped to zero.
double bw_distance_sq(const SpdMatrix& a, const SpdMatrix& b);

inline double bw_distance(const SpdMatrix& a, const SpdMatrix& b) {
  return std::sqrt(bw_distance_sq(a, b));
}

// Optimal transport map T with T A T = B; equals GM(A^{-1}, B).
SpdMatrix transport_map(const SpdMatrix& a, const SpdMatrix& b);

// Constant-speed geodesic gamma(t) = ((1-t)I + tT) A ((1-t)I + tT).
// t outside [0,1] extrapolates; throws NotSpdResult if the result leaves
// the cone.
SpdMatrix geodesic(const SpdMatrix& a, const SpdMatrix& b, double t);

// Solves X Z + Z X = U in X's eigenbasis: Z_ij = U_ij / (w_i + w_j).
MatrixXd lyapunov_solve(const SpdMatrix& x, const MatrixXd& u);

// Riemannian metric g_bw(U,V) = (1/2) Tr(L_X[U] V).
double bw_inner(const SpdMatrix& x, const MatrixXd& u, const MatrixXd& v);

// Exp_X(U) = X + U + L_X[U] X L_X[U] = (I + L_X[U]) X (I + L_X[U]).
SpdMatrix bw_exp(const SpdMatrix& x, const MatrixXd& u);

// Inverse of bw_exp along the geodesic: (T - I) X + X (T - I) with
// T = transport_map(X, Y).
MatrixXd bw_log(const SpdMatrix& x, const SpdMatrix& y);

// F(S) = sum_k lambda_k W2^2(S, Sigma_k). May be negative under signed
// weights. Terms are summed in index order (deterministic).
double objective(const SignedBarycenterProblem& prob, const SpdMatrix& s);

// Euclidean gradient of F: I - sum_k lambda_k GM(S^{-1}, Sigma_k).
MatrixXd euclidean_gradient(const SignedBarycenterProblem& prob, const SpdMatrix& s);

// Riemannian gradient 4 {G S}_s = 2 (G S + S G) for Euclidean gradient G.
MatrixXd bw_gradient(const SpdMatrix& s, const MatrixXd& euclid_grad);

// Norm of the Riemannian gradient in the metric at S.
double bw_gradient_norm(const SpdMatrix& s, const MatrixXd& euclid_grad);

// Upper bound 3 / (2 lambda_min(S)) on all sectional curvatures at S.
double curvature_upper_bound(const SpdMatrix& s);

}  // namespace bwreg
