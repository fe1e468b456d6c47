#include <Eigen/Dense>

#include "coopreg/numlin.hpp"

namespace coopreg {

namespace {

// Orthonormal basis of the column space of M (SVD, relative tolerance).
Matrix range_basis(const Matrix& M, double rel_tol = 1e-9) {
  if (M.size() == 0) return Matrix(M.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(M, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  int r = 0;
  if (sv.size() > 0 && sv(0) > 0.0)
    for (int i = 0; i < sv.size(); ++i)
      if (sv(i) > rel_tol * sv(0)) ++r;
  return svd.matrixU().leftCols(r);
}

Matrix krylov(const Matrix& A, const Matrix& B) {
  const auto n = A.rows();
  Matrix K(n, n * B.cols());
  Matrix blk = B;
  for (Eigen::Index k = 0; k < n; ++k) {
    K.middleCols(k * B.cols(), B.cols()) = blk;
    blk = A * blk;
  }
  return K;
}

}  // namespace

StateSpace minimal_realization(const StateSpace& sys) {
  const auto n = sys.A.rows();
  if (sys.A.cols() != n || sys.B.rows() != n || sys.C.cols() != n)
    throw NonConformable("minimal_realization: inconsistent dimensions");

  // Restrict to the controllable subspace; A maps it into itself, so the
  // projected triple reproduces every Markov parameter C A^k B.
  const Matrix Vc = range_basis(krylov(sys.A, sys.B));
  const Matrix A1 = Vc.transpose() * sys.A * Vc;
  const Matrix B1 = Vc.transpose() * sys.B;
  const Matrix C1 = sys.C * Vc;

  // Then keep only the observable part of the restriction.
  const Matrix Vo = range_basis(krylov(A1.transpose(), C1.transpose()));
  StateSpace out;
  out.A = Vo.transpose() * A1 * Vo;
  out.B = Vo.transpose() * B1;
  out.C = C1 * Vo;
  out.D = sys.D;
  return out;
}

}  // namespace coopreg
