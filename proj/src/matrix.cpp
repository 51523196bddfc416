#include "bwreg/matrix.hpp"

#include <cmath>

namespace bwreg {

namespace {

void require_finite(const MatrixXd& m) {
  if (!m.allFinite()) throw InvalidInput("matrix has non-finite entries");
}

}  // namespace

SymmetricMatrix::SymmetricMatrix(MatrixXd m, double symmetry_tolerance) {
  require_finite(m);
  if (m.rows() != m.cols()) throw DimensionError("symmetric matrix must be square");
  const double defect = (m - m.transpose()).norm();
  const double scale = std::max(1.0, m.norm());
  if (defect > symmetry_tolerance * scale)
    throw InvalidInput("matrix is not symmetric (defect " + std::to_string(defect) + ")");
  m_ = 0.5 * (m + m.transpose());
}

SymmetricMatrix SymmetricMatrix::Zero(int dim) {
  return SymmetricMatrix(MatrixXd::Zero(dim, dim));
}

Eigendecomposition sym_eig(const MatrixXd& m) {
  require_finite(m);
  if (m.rows() != m.cols()) throw DimensionError("sym_eig: matrix must be square");
  Eigen::SelfAdjointEigenSolver<MatrixXd> solver(0.5 * (m + m.transpose()));
  if (solver.info() != Eigen::Success)
    throw InvalidInput("sym_eig: eigendecomposition failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

SpdMatrix::SpdMatrix(const MatrixXd& m) {
  require_finite(m);
  if (m.rows() != m.cols()) throw DimensionError("SpdMatrix must be square");
  m_ = 0.5 * (m + m.transpose());
  eig_ = sym_eig(m_);
  const double lmax = eig_.eigenvalues(m_.rows() - 1);
  if (!(lmax > 0.0) || eig_.eigenvalues(0) <= kSpdTolerance * lmax)
    throw NotSpdResult("matrix is not positive definite (min eigenvalue " +
                       std::to_string(eig_.eigenvalues(0)) + ")");
}

SpdMatrix SpdMatrix::Identity(int dim) { return SpdMatrix(MatrixXd::Identity(dim, dim)); }

MatrixXd SpdMatrix::pow(double p) const {
  if (p < 0.0 && min_eigenvalue() <= kSpdTolerance * max_eigenvalue())
    throw NearSingular("negative power of a near-singular matrix");
  VectorXd w = eig_.eigenvalues.array().pow(p);
  return eig_.eigenvectors * w.asDiagonal() * eig_.eigenvectors.transpose();
}

SymmetricMatrix spd_power(const SpdMatrix& s, double p) {
  return SymmetricMatrix(s.pow(p));
}

MatrixXd psd_sqrt(const MatrixXd& m) {
  Eigendecomposition e = sym_eig(m);
  VectorXd w = e.eigenvalues.array().max(0.0).sqrt();
  return e.eigenvectors * w.asDiagonal() * e.eigenvectors.transpose();
}

SpdMatrix geometric_mean(const SpdMatrix& a, const SpdMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("geometric_mean: dimension mismatch");
  const MatrixXd a_half = a.sqrt();
  const MatrixXd a_inv_half = a.inv_sqrt();
  const MatrixXd inner = psd_sqrt(a_inv_half * b.mat() * a_inv_half);
  return SpdMatrix(a_half * inner * a_half);
}

MatrixXd pseudo_inverse(const MatrixXd& m, double rank_tolerance) {
  Eigendecomposition e = sym_eig(m);
  const double lmax = e.eigenvalues.cwiseAbs().maxCoeff();
  if (lmax == 0.0) return MatrixXd::Zero(m.rows(), m.cols());
  VectorXd w = e.eigenvalues;
  for (int i = 0; i < w.size(); ++i)
    w(i) = std::abs(w(i)) <= rank_tolerance * lmax ? 0.0 : 1.0 / w(i);
  return e.eigenvectors * w.asDiagonal() * e.eigenvectors.transpose();
}

SpdReport is_spd(const MatrixXd& m, double tol) {
  require_finite(m);
  SpdReport report;
  report.symmetric_defect = (m - m.transpose()).norm();
  Eigendecomposition e = sym_eig(m);
  report.min_eigenvalue = e.eigenvalues(0);
  report.verdict = report.symmetric_defect <= tol && report.min_eigenvalue > tol;
  return report;
}

}  // namespace bwreg
