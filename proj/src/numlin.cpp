#include "coopreg/numlin.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>

namespace coopreg {

namespace {

void require_square(const Matrix& M, const char* who) {
  if (M.rows() != M.cols()) {
    throw NonSquare(std::string(who) + ": matrix is " + std::to_string(M.rows()) +
                    "x" + std::to_string(M.cols()));
  }
}

}  // namespace

Eigen::VectorXcd eigenvalues(const Matrix& M) {
  require_square(M, "eigenvalues");
  return Eigen::EigenSolver<Matrix>(M, /*computeEigenvectors=*/false).eigenvalues();
}

bool is_hurwitz(const Matrix& M, double tol) {
  require_square(M, "is_hurwitz");
  return eigenvalues(M).real().maxCoeff() < -tol;
}

double spectral_radius(const Matrix& M) {
  require_square(M, "spectral_radius");
  if (M.size() == 0) return 0.0;
  return eigenvalues(M).cwiseAbs().maxCoeff();
}

int rank_svd(const Eigen::MatrixXcd& M, double rel_tol) {
  if (M.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
  const auto& sv = svd.singularValues();
  if (sv(0) == 0.0) return 0;
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > rel_tol * sv(0)) ++r;
  return r;
}

Matrix sylvester_solve(const Matrix& A, const Matrix& B, const Matrix& C) {
  require_square(A, "sylvester_solve");
  require_square(B, "sylvester_solve");
  const auto n = A.rows(), m = B.rows();
  if (C.rows() != n || C.cols() != m)
    throw NonConformable("sylvester_solve: C must be " + std::to_string(n) + "x" +
                         std::to_string(m));
  if (n == 0 || m == 0) return Matrix::Zero(n, m);

  using Mc = Eigen::MatrixXcd;
  Eigen::ComplexSchur<Mc> sa(A.cast<std::complex<double>>());
  Eigen::ComplexSchur<Mc> sb(B.cast<std::complex<double>>());
  const Mc Ta = sa.matrixT(), Qa = sa.matrixU();
  const Mc Tb = sb.matrixT(), Qb = sb.matrixU();

  double scale = 1.0 + Ta.diagonal().cwiseAbs().maxCoeff() +
                 Tb.diagonal().cwiseAbs().maxCoeff();
  double min_gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < m; ++j)
      min_gap = std::min(min_gap, std::abs(Ta(i, i) - Tb(j, j)));
  if (min_gap < 1e-9 * scale)
    throw SpectraOverlap("sylvester_solve: spectra of A and B nearly intersect (gap " +
                         std::to_string(min_gap) + ")");

  // X B = A X + C  <=>  A X - X B = -C. In Schur coordinates
  // Ta Y - Y Tb = D, solved column by column: (Ta - Tb(k,k) I) y_k = d_k + sum_{j<k} y_j Tb(j,k).
  Eigen::MatrixXcd D = -(Qa.adjoint() * C * Qb);
  Eigen::MatrixXcd Y(n, m);
  for (Eigen::Index k = 0; k < m; ++k) {
    Eigen::VectorXcd rhs = D.col(k);
    for (Eigen::Index j = 0; j < k; ++j) rhs += Y.col(j) * Tb(j, k);
    Eigen::MatrixXcd Tk = Ta;
    Tk.diagonal().array() -= Tb(k, k);
    Y.col(k) = Tk.triangularView<Eigen::Upper>().solve(rhs);
  }
  return (Qa * Y * Qb.adjoint()).real();
}

namespace {

bool pbh_full_rank(const Matrix& A, const Matrix& B, bool dual) {
  const auto n = A.rows();
  const Eigen::VectorXcd lam = eigenvalues(A);
  const double scale = std::max(1.0, A.norm());
  for (Eigen::Index i = 0; i < n; ++i) {
    if (lam(i).real() < -1e-9 * scale) continue;  // stable modes need no test
    Eigen::MatrixXcd M;
    if (!dual) {
      M.resize(n, n + B.cols());
      M << A.cast<std::complex<double>>() -
               lam(i) * Eigen::MatrixXcd::Identity(n, n),
          B.cast<std::complex<double>>();
    } else {
      M.resize(n + B.rows(), n);
      M << A.cast<std::complex<double>>() -
               lam(i) * Eigen::MatrixXcd::Identity(n, n),
          B.cast<std::complex<double>>();
    }
    if (rank_svd(M) < n) return false;
  }
  return true;
}

}  // namespace

bool pbh_stabilizable(const Matrix& A, const Matrix& B) {
  require_square(A, "pbh_stabilizable");
  if (B.rows() != A.rows()) throw NonConformable("pbh_stabilizable: B row count");
  return pbh_full_rank(A, B, /*dual=*/false);
}

bool pbh_detectable(const Matrix& A, const Matrix& C) {
  require_square(A, "pbh_detectable");
  if (C.cols() != A.cols()) throw NonConformable("pbh_detectable: C column count");
  return pbh_full_rank(A, C, /*dual=*/true);
}

bool transmission_zero_rank_ok(const Matrix& A, const Matrix& B, const Matrix& C,
                               const Matrix& D,
                               const std::vector<std::complex<double>>& lambdas) {
  require_square(A, "transmission_zero_rank_ok");
  const auto n = A.rows();
  const auto p = C.rows();
  if (B.rows() != n || C.cols() != n || D.rows() != p || D.cols() != B.cols())
    throw NonConformable("transmission_zero_rank_ok: inconsistent block dimensions");
  for (const auto& lam : lambdas) {
    Eigen::MatrixXcd M(n + p, n + B.cols());
    M << A.cast<std::complex<double>>() - lam * Eigen::MatrixXcd::Identity(n, n),
        B.cast<std::complex<double>>(), C.cast<std::complex<double>>(),
        D.cast<std::complex<double>>();
    if (rank_svd(M) < n + p) return false;
  }
  return true;
}

Vector characteristic_polynomial(const Matrix& A) {
  require_square(A, "characteristic_polynomial");
  const auto n = A.rows();
  // Faddeev-LeVerrier: p(s) = s^n + c_{n-1} s^{n-1} + ... + c_0.
  Vector coeffs(n + 1);
  coeffs(n) = 1.0;
  Matrix M = Matrix::Zero(n, n);
  double c = 1.0;
  for (Eigen::Index k = 1; k <= n; ++k) {
    M = A * M + c * Matrix::Identity(n, n);
    c = -(A * M).trace() / static_cast<double>(k);
    coeffs(n - k) = c;
  }
  return coeffs;
}

Vector minimal_polynomial(const Matrix& A) {
  require_square(A, "minimal_polynomial");
  const auto n = A.rows();
  if (n == 0) return Vector::Ones(1);

  // Work with the scaled matrix so the Krylov columns stay O(1), then undo
  // the scaling on the coefficients.
  const double sigma = std::max(1.0, A.cwiseAbs().maxCoeff());
  const Matrix As = A / sigma;

  std::vector<Matrix> powers;
  powers.push_back(Matrix::Identity(n, n));
  for (Eigen::Index k = 1; k <= n; ++k) powers.push_back(As * powers.back());

  for (Eigen::Index deg = 1; deg <= n; ++deg) {
    Matrix V(n * n, deg);
    for (Eigen::Index j = 0; j < deg; ++j)
      V.col(j) = powers[j].reshaped();
    Vector target = powers[deg].reshaped();
    Vector c = V.colPivHouseholderQr().solve(target);
    double resid = (V * c - target).norm();
    if (resid <= 1e-8 * std::sqrt(static_cast<double>(n))) {
      Vector coeffs(deg + 1);
      coeffs(deg) = 1.0;
      for (Eigen::Index j = 0; j < deg; ++j)
        coeffs(j) = -c(j) * std::pow(sigma, static_cast<double>(deg - j));
      return coeffs;
    }
  }
  // Cayley-Hamilton guarantees the loop exits at deg <= n; fall back anyway.
  return characteristic_polynomial(A);
}

Matrix expm(const Matrix& A, double t) {
  require_square(A, "expm");
  return (A * t).exp();
}

DecayEnvelope decay_envelope(const Matrix& A) {
  require_square(A, "decay_envelope");
  const Eigen::VectorXcd lam = eigenvalues(A);
  const double max_re = lam.real().maxCoeff();
  if (max_re >= 0.0) throw NotHurwitz("decay_envelope: A is not Hurwitz");

  DecayEnvelope env;
  env.alpha = 0.95 * (-max_re);

  auto grid_max = [&](int npts) {
    const double t_lo = 1e-3, t_hi = 50.0 / env.alpha;
    double c = 1.0;  // limit t -> 0
    for (int i = 0; i < npts; ++i) {
      const double t = t_lo * std::pow(t_hi / t_lo, static_cast<double>(i) /
                                                        (npts - 1));
      Eigen::JacobiSVD<Matrix> svd(expm(A, t));
      c = std::max(c, svd.singularValues()(0) * std::exp(env.alpha * t));
    }
    return c;
  };
  // Certified on the sampled grid only; the denser pass catches maxima the
  // coarse one missed.
  env.c = std::max(grid_max(400), grid_max(1200));
  return env;
}

bool controllable(const Matrix& A, const Matrix& B, double rel_tol) {
  const auto n = A.rows();
  if (n == 0) return true;
  Matrix ctrb(n, n * B.cols());
  Matrix blk = B;
  for (Eigen::Index k = 0; k < n; ++k) {
    ctrb.middleCols(k * B.cols(), B.cols()) = blk;
    blk = A * blk;
  }
  return rank_svd(ctrb.cast<std::complex<double>>(), rel_tol) == n;
}

bool observable(const Matrix& A, const Matrix& C, double rel_tol) {
  return controllable(A.transpose(), C.transpose(), rel_tol);
}

Matrix kron(const Matrix& A, const Matrix& B) {
  Matrix K(A.rows() * B.rows(), A.cols() * B.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j)
      K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
  return K;
}

}  // namespace coopreg
