#include <Eigen/Dense>

#include <cmath>

#include "coopreg/numlin.hpp"

namespace coopreg {

namespace {

using Eigen::MatrixXcd;
using cd = std::complex<double>;

// Swap the adjacent diagonal entries (i, i+1) of an upper triangular T with a
// unitary similarity, accumulating into Q.
void swap_diagonal(MatrixXcd& T, MatrixXcd& Q, Eigen::Index i) {
  const cd a = T(i, i), b = T(i, i + 1), d = T(i + 1, i + 1);
  // [b; d - a] is the eigenvector of [[a, b], [0, d]] for eigenvalue d.
  const cd x = b, y = d - a;
  const double nrm = std::sqrt(std::norm(x) + std::norm(y));
  if (nrm == 0.0) return;  // already swappable trivially (a == d)
  const cd c = x / nrm, s = y / nrm;
  Eigen::Matrix2cd G;
  G << std::conj(c), std::conj(s), -s, c;  // G * [x; y] = [nrm; 0]
  T.middleRows(i, 2) = G * T.middleRows(i, 2);
  T.middleCols(i, 2) = T.middleCols(i, 2) * G.adjoint();
  Q.middleCols(i, 2) = Q.middleCols(i, 2) * G.adjoint();
  T(i + 1, i) = 0.0;
}

}  // namespace

Matrix care_solve(const Matrix& A, const Matrix& B, const Matrix& Q, const Matrix& R) {
  const auto n = A.rows(), m = B.cols();
  if (A.cols() != n || B.rows() != n || Q.rows() != n || Q.cols() != n ||
      R.rows() != m || R.cols() != m)
    throw NonConformable("care_solve: inconsistent dimensions");
  if (!pbh_stabilizable(A, B))
    throw NotStabilizable("care_solve: (A, B) is not stabilizable");

  Eigen::LLT<Matrix> R_chol(R);
  if (R_chol.info() != Eigen::Success)
    throw NonConformable("care_solve: R must be positive definite");
  const Matrix G = B * R_chol.solve(B.transpose());

  Matrix H(2 * n, 2 * n);
  H << A, -G, -Q, -A.transpose();

  Eigen::ComplexSchur<MatrixXcd> schur(H.cast<cd>());
  MatrixXcd T = schur.matrixT(), U = schur.matrixU();

  // Bubble the stable eigenvalues to the top of the Schur form.
  const auto stable = [&](Eigen::Index i) { return T(i, i).real() < 0.0; };
  for (Eigen::Index pass = 0; pass < 2 * n; ++pass) {
    bool moved = false;
    for (Eigen::Index i = 0; i + 1 < 2 * n; ++i) {
      if (!stable(i) && stable(i + 1)) {
        swap_diagonal(T, U, i);
        moved = true;
      }
    }
    if (!moved) break;
  }
  Eigen::Index n_stable = 0;
  for (Eigen::Index i = 0; i < 2 * n; ++i)
    if (stable(i)) ++n_stable;
  if (n_stable != n)
    throw NoStabilizingSolution("care_solve: Hamiltonian has " +
                                std::to_string(n_stable) + " stable eigenvalues, expected " +
                                std::to_string(n));

  const MatrixXcd U1 = U.topLeftCorner(n, n);
  const MatrixXcd U2 = U.bottomLeftCorner(n, n);
  Matrix P = (U2 * U1.partialPivLu().solve(MatrixXcd::Identity(n, n))).real();
  P = 0.5 * (P + P.transpose());

  const double resid =
      (A.transpose() * P + P * A - P * G * P + Q).norm() / (1.0 + P.norm());
  if (resid > 1e-8)
    throw NoStabilizingSolution("care_solve: residual " + std::to_string(resid));
  if (!is_hurwitz(A - G * P))
    throw NoStabilizingSolution("care_solve: closed loop is not Hurwitz");
  return P;
}

}  // namespace coopreg
