#pragma once

#include <Eigen/Dense>

#include "bwreg/errors.hpp"

namespace bwreg {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Relative threshold separating "positive definite" from "numerically
// singular": an SPD matrix must have lambda_min > kSpdTolerance * lambda_max.
inline constexpr double kSpdTolerance = 1e-12;

// Default relative eigenvalue cutoff for the Moore-Penrose pseudoinverse.
// Connected-graph Laplacians have exactly one zero eigenvalue; this
// separates it cleanly from the Fiedler value.
inline constexpr double kRankTolerance = 1e-10;

// Symmetric matrix with no definiteness requirement. Construction rejects
// inputs whose asymmetry exceeds `symmetry_tolerance` and then forces
// exact symmetry as (M + M^T)/2.
class SymmetricMatrix {
 public:
  explicit SymmetricMatrix(MatrixXd m, double symmetry_tolerance = 1e-8);

  // Zero matrix of the given dimension.
  static SymmetricMatrix Zero(int dim);

  int dim() const { return static_cast<int>(m_.rows()); }
  const MatrixXd& mat() const { return m_; }

 private:
  MatrixXd m_;
};

struct Eigendecomposition {
  VectorXd eigenvalues;   // ascending
  MatrixXd eigenvectors;  // columns, orthonormal
};

// eigendecomposition of a symmetric matrix; M == V diag(w) V^T.
Eigendecomposition sym_eig(const MatrixXd& m);

// Strictly positive definite matrix. Input is symmetrized as (M + M^T)/2,
// eigendecomposed once at construction, and rejected unless
// lambda_min > kSpdTolerance * lambda_max. Immutable afterwards; safe to
// share across threads.
class SpdMatrix {
 public:
  explicit SpdMatrix(const MatrixXd& m);
  explicit SpdMatrix(const SymmetricMatrix& m) : SpdMatrix(m.mat()) {}

  static SpdMatrix Identity(int dim);

  int dim() const { return static_cast<int>(m_.rows()); }
  const MatrixXd& mat() const { return m_; }
  const VectorXd& eigenvalues() const { return eig_.eigenvalues; }
  const MatrixXd& eigenvectors() const { return eig_.eigenvectors; }
  double min_eigenvalue() const { return eig_.eigenvalues(0); }
  double max_eigenvalue() const { return eig_.eigenvalues(dim() - 1); }
  double trace() const { return m_.trace(); }

  // V diag(w^p) V^T. Cached eigendecomposition makes repeated powers cheap.
  MatrixXd pow(double p) const;
  MatrixXd sqrt() const { return pow(0.5); }
  MatrixXd inv_sqrt() const { return pow(-0.5); }
  MatrixXd inverse() const { return pow(-1.0); }

 private:
  MatrixXd m_;
  Eigendecomposition eig_;
};

// Fractional power of an SPD matrix as a free function.
SymmetricMatrix spd_power(const SpdMatrix& s, double p);

// GM(A,B) = A^{1/2} (A^{-1/2} B A^{-1/2})^{1/2} A^{1/2}; the unique SPD
// solution G of G A^{-1} G = B.
SpdMatrix geometric_mean(const SpdMatrix& a, const SpdMatrix& b);

// Moore-Penrose pseudoinverse of a symmetric PSD matrix. Eigenvalues below
// rank_tolerance * lambda_max map to zero.
MatrixXd pseudo_inverse(const MatrixXd& m, double rank_tolerance = kRankTolerance);

struct SpdReport {
  double min_eigenvalue = 0.0;
  double symmetric_defect = 0.0;
  bool verdict = false;
};

// Diagnostic SPD check on a raw matrix: symmetric within tol and
// lambda_min > tol.
SpdReport is_spd(const MatrixXd& m, double tol = kSpdTolerance);

// Symmetric square root of a PSD matrix; eigenvalues clamped at zero
// before the root to absorb roundoff.
MatrixXd psd_sqrt(const MatrixXd& m);

}  // namespace bwreg
