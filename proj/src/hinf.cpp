#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <vector>

#include "coopreg/numlin.hpp"

namespace coopreg {

namespace {

double sigma_max(const Eigen::MatrixXcd& M) {
  if (M.size() == 0) return 0.0;
  return Eigen::JacobiSVD<Eigen::MatrixXcd>(M).singularValues()(0);
}

double gain_at(const Matrix& A, const Matrix& B, const Matrix& C, const Matrix& D,
               double w) {
  const auto n = A.rows();
  Eigen::MatrixXcd M =
      std::complex<double>(0.0, w) * Eigen::MatrixXcd::Identity(n, n) -
      A.cast<std::complex<double>>();
  Eigen::MatrixXcd G = C.cast<std::complex<double>>() *
                           M.partialPivLu().solve(B.cast<std::complex<double>>()) +
                       D.cast<std::complex<double>>();
  return sigma_max(G);
}

// True iff the gamma-Hamiltonian has an eigenvalue on the imaginary axis,
// i.e. gamma < ||G||_inf. Requires gamma > sigma_max(D).
bool hamiltonian_touches_axis(const Matrix& A, const Matrix& B, const Matrix& C,
                              const Matrix& D, double gamma) {
  const auto n = A.rows();
  const auto m = B.cols();
  const auto p = C.rows();
  const Matrix R = gamma * gamma * Matrix::Identity(m, m) - D.transpose() * D;
  const Eigen::LDLT<Matrix> Rf(R);
  const Matrix Ah = A + B * Rf.solve(D.transpose() * C);
  Matrix H(2 * n, 2 * n);
  H << Ah, B * Rf.solve(B.transpose()),
      -C.transpose() * (Matrix::Identity(p, p) + D * Rf.solve(D.transpose())) * C,
      -Ah.transpose();
  const Eigen::VectorXcd lam = eigenvalues(H);
  for (Eigen::Index i = 0; i < lam.size(); ++i)
    if (std::abs(lam(i).real()) < 1e-7 * (1.0 + std::abs(lam(i)))) return true;
  return false;
}

}  // namespace

double hinf_norm(const Matrix& A, const Matrix& B, const Matrix& C, const Matrix& D,
                 double rel_tol) {
  const auto n = A.rows();
  if (A.cols() != n || B.rows() != n || C.cols() != n || D.rows() != C.rows() ||
      D.cols() != B.cols())
    throw NonConformable("hinf_norm: inconsistent dimensions");
  if (!is_hurwitz(A)) throw NotHurwitz("hinf_norm: A is not Hurwitz");

  const double sD = sigma_max(D.cast<std::complex<double>>());
  if (B.norm() == 0.0 || C.norm() == 0.0) return sD;

  // Lower bound from a handful of frequencies: zero, the eigenfrequencies of A,
  // and their surroundings.
  std::vector<double> probes = {0.0};
  const Eigen::VectorXcd lam = eigenvalues(A);
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    const double w = std::abs(lam(i).imag());
    if (w > 0.0) {
      probes.push_back(w);
      probes.push_back(std::abs(lam(i)));
    }
  }
  double lo = sD;
  for (double w : probes) lo = std::max(lo, gain_at(A, B, C, D, w));
  lo = std::max(lo, 1e-12);

  double hi = 2.0 * lo + 1e-12;
  while (hamiltonian_touches_axis(A, B, C, D, hi)) hi *= 2.0;

  while (hi - lo > rel_tol * lo) {
    const double mid = 0.5 * (lo + hi);
    if (hamiltonian_touches_axis(A, B, C, D, mid))
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace coopreg
