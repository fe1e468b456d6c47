#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "coopreg/errors.hpp"
#include "coopreg/numlin.hpp"
#include "doctest.h"

using namespace coopreg;

namespace {

std::mt19937 rng(12345);

Matrix random_matrix(int r, int c, double scale = 1.0) {
  std::uniform_real_distribution<double> d(-scale, scale);
  Matrix M(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) M(i, j) = d(rng);
  return M;
}

Matrix random_hurwitz(int n) {
  Matrix M = random_matrix(n, n);
  return M - (spectral_radius(M) + 0.5) * Matrix::Identity(n, n);
}

// Dense Kronecker-vectorization reference for X B = A X + C.
Matrix sylvester_oracle(const Matrix& A, const Matrix& B, const Matrix& C) {
  const Eigen::Index n = A.rows(), m = B.rows();
  const Matrix K = kron(B.transpose(), Matrix::Identity(n, n)) -
                   kron(Matrix::Identity(m, m), A);
  const Vector x = K.fullPivLu().solve(Eigen::Map<const Vector>(C.data(), n * m));
  return Eigen::Map<const Matrix>(x.data(), n, m);
}

}  // namespace

TEST_CASE("hurwitz and spectral radius basics") {
  Matrix D1 = Matrix::Zero(2, 2);
  D1.diagonal() << -1, -2;
  CHECK(is_hurwitz(D1));
  Matrix J(2, 2);
  J << 0, 1, 0, 0;
  CHECK_FALSE(is_hurwitz(J));
  CHECK(spectral_radius(Matrix::Zero(3, 3)) == doctest::Approx(0.0));
  Matrix D2 = Matrix::Zero(2, 2);
  D2.diagonal() << 0.3, -0.9;
  CHECK(spectral_radius(D2) == doctest::Approx(0.9));
  CHECK_THROWS_AS(is_hurwitz(Matrix::Zero(2, 3)), NonSquare);
}

TEST_CASE("sylvester scalar and zero-B cases") {
  Matrix A(1, 1), B(1, 1), C(1, 1);
  A << -1;
  B << 1;
  C << 2;
  CHECK(sylvester_solve(A, B, C)(0, 0) == doctest::Approx(1.0));

  const Matrix Ah = random_hurwitz(4);
  const Matrix Ch = random_matrix(4, 3);
  const Matrix X = sylvester_solve(Ah, Matrix::Zero(3, 3), Ch);
  CHECK((X + Ah.inverse() * Ch).norm() < 1e-10 * (1 + Ch.norm()));
}

TEST_CASE("sylvester matches the Kronecker oracle") {
  for (int it = 0; it < 50; ++it) {
    const int n = 2 + static_cast<int>(rng() % 7);
    const int m = 2 + static_cast<int>(rng() % 7);
    const Matrix A = random_hurwitz(n);
    // Spectrum of B on/near the imaginary axis, disjoint from sigma(A).
    Matrix B = random_matrix(m, m);
    B = 0.5 * (B - B.transpose());
    const Matrix C = random_matrix(n, m);
    const Matrix X = sylvester_solve(A, B, C);
    const Matrix Xo = sylvester_oracle(A, B, C);
    CHECK((X - Xo).norm() <= 1e-10 * (1 + Xo.norm()));
    CHECK((X * B - A * X - C).norm() <= 1e-9 * (1 + C.norm()));
  }
}

TEST_CASE("sylvester rejects overlapping spectra") {
  Matrix A(1, 1), B(1, 1), C(1, 1);
  A << 2;
  B << 2;
  C << 1;
  CHECK_THROWS_AS(sylvester_solve(A, B, C), SpectraOverlap);
}

TEST_CASE("PBH stabilizability and detectability") {
  Matrix A(1, 1), B(1, 1);
  A << 1;
  B << 1;
  CHECK(pbh_stabilizable(A, B));
  Matrix A2 = Matrix::Zero(2, 2);
  A2.diagonal() << -1, 2;
  Matrix B2(2, 1);
  B2 << 1, 0;
  CHECK_FALSE(pbh_stabilizable(A2, B2));
  CHECK_FALSE(pbh_detectable(A2.transpose(), B2.transpose()));
  CHECK(pbh_detectable(A2, Matrix::Identity(2, 2)));
  CHECK_THROWS_AS(pbh_stabilizable(A2, Matrix::Zero(3, 1)), NonConformable);
}

TEST_CASE("transmission zero rank test") {
  // Second-order benchmark agent: full rank at lambda = 0.
  Matrix A(2, 2), B(2, 1), C(1, 2), D(1, 1);
  A << -1, 1, 0.2, 0;
  B << 1, 2;
  C << 1, 0;
  D << 0.1;
  CHECK(transmission_zero_rank_ok(A, B, C, D, {{0.0, 0.0}}));

  Matrix Az = Matrix::Zero(1, 1), Bz = Matrix::Zero(1, 1), Cz = Matrix::Ones(1, 1),
         Dz = Matrix::Zero(1, 1);
  CHECK_FALSE(transmission_zero_rank_ok(Az, Bz, Cz, Dz, {{0.0, 0.0}}));

  // Third-order benchmark agent at the oscillator eigenvalues.
  Matrix A3(3, 3), B3(3, 2), C3(1, 3), D3 = Matrix::Zero(1, 2);
  A3 << 0, 1, 0, 0, 2, 1, 0, 0, 0;
  B3 << 0, 0, 1, 0, 0, 1;
  C3 << 1, 0, 0.4;
  CHECK(transmission_zero_rank_ok(A3, B3, C3, D3,
                                  {{0.0, 0.0}, {0.0, 0.5}, {0.0, -0.5}}));
}

TEST_CASE("hinf norm analytic cases") {
  Matrix A(1, 1), B(1, 1), C(1, 1), D(1, 1);
  A << -1;
  B << 1;
  C << 1;
  D << 0;
  CHECK(hinf_norm(A, B, C, D) == doctest::Approx(1.0).epsilon(1e-5));
  Matrix D2(1, 1);
  D2 << 0.7;
  CHECK(hinf_norm(A, Matrix::Zero(1, 1), C, D2) == doctest::Approx(0.7));
  Matrix Au(1, 1);
  Au << 1;
  CHECK_THROWS_AS(hinf_norm(Au, B, C, D), NotHurwitz);
}

TEST_CASE("hinf norm matches a frequency sweep") {
  for (int it = 0; it < 20; ++it) {
    const int n = 2 + static_cast<int>(rng() % 3);
    const Matrix A = random_hurwitz(n);
    const Matrix B = random_matrix(n, 1);
    const Matrix C = random_matrix(1, n);
    const Matrix D = random_matrix(1, 1, 0.3);
    const double g = hinf_norm(A, B, C, D);
    double sweep = 0.0;
    for (int k = 0; k <= 20000; ++k) {
      const double w = std::pow(10.0, -3.0 + 6.0 * k / 20000.0);
      const Eigen::MatrixXcd M =
          (std::complex<double>(0, w) * Eigen::MatrixXcd::Identity(n, n) -
           A.cast<std::complex<double>>());
      const Eigen::MatrixXcd G =
          C.cast<std::complex<double>>() * M.lu().solve(B.cast<std::complex<double>>()) +
          D.cast<std::complex<double>>();
      sweep = std::max(sweep, G.jacobiSvd().singularValues()(0));
    }
    sweep = std::max(sweep, (C * (-A).inverse() * B + D).norm());
    CHECK(g == doctest::Approx(sweep).epsilon(2e-4));
  }
}

TEST_CASE("riccati solver basics") {
  Matrix A(1, 1), B(1, 1), Q(1, 1), R(1, 1);
  A << 0;
  B << 1;
  Q << 1;
  R << 1;
  const Matrix P = care_solve(A, B, Q, R);
  CHECK(P(0, 0) == doctest::Approx(1.0));
  CHECK(is_hurwitz(A - B * B.transpose() * P));

  for (int it = 0; it < 20; ++it) {
    const int n = 2 + static_cast<int>(rng() % 3);
    const Matrix Ar = random_matrix(n, n);
    const Matrix Br = random_matrix(n, 1);
    if (!pbh_stabilizable(Ar, Br)) continue;
    const Matrix Pr = care_solve(Ar, Br, Matrix::Identity(n, n), Matrix::Identity(1, 1));
    const Matrix res = Ar.transpose() * Pr + Pr * Ar -
                       Pr * Br * Br.transpose() * Pr + Matrix::Identity(n, n);
    CHECK(res.norm() <= 1e-8 * (1 + Pr.norm()));
    CHECK(is_hurwitz(Ar - Br * Br.transpose() * Pr));
  }
}

TEST_CASE("riccati rejects unstabilizable pairs") {
  Matrix A = Matrix::Zero(2, 2);
  A.diagonal() << 1, 2;
  Matrix B(2, 1);
  B << 1, 0;
  CHECK_THROWS_AS(
      care_solve(A, B, Matrix::Identity(2, 2), Matrix::Identity(1, 1)),
      NotStabilizable);
}

TEST_CASE("minimal polynomial") {
  Vector m0 = minimal_polynomial(Matrix::Zero(3, 3));
  REQUIRE(m0.size() == 2);  // s
  CHECK(m0(0) == doctest::Approx(0.0));
  CHECK(m0(1) == doctest::Approx(1.0));

  Vector m1 = minimal_polynomial(Matrix::Identity(3, 3));
  REQUIRE(m1.size() == 2);  // s - 1
  CHECK(m1(0) == doctest::Approx(-1.0));

  Matrix A0(3, 3);
  A0 << 0, 0.5, 0, -0.5, 0, 0, 0, 0, 0;
  Vector m2 = minimal_polynomial(A0);  // s^3 + 0.25 s
  REQUIRE(m2.size() == 4);
  CHECK(m2(0) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(m2(1) == doctest::Approx(0.25));
  CHECK(m2(2) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(m2(3) == doctest::Approx(1.0));
}

TEST_CASE("minimal polynomial divides the characteristic polynomial") {
  for (int it = 0; it < 25; ++it) {
    const int n = 2 + static_cast<int>(rng() % 4);
    const Matrix A = random_matrix(n, n, 2.0);
    const Vector m = minimal_polynomial(A);
    const Vector c = characteristic_polynomial(A);
    // Synthetic division of c by m; remainder should vanish.
    Vector r = c;
    const int dm = static_cast<int>(m.size()) - 1;
    for (int k = static_cast<int>(r.size()) - 1; k >= dm; --k) {
      const double f = r(k);
      for (int j = 0; j <= dm; ++j) r(k - dm + j) -= f * m(j);
    }
    CHECK(r.head(dm).norm() <= 1e-6 * (1 + c.norm()));
  }
}

TEST_CASE("matrix exponential and decay envelope") {
  CHECK((expm(Matrix::Zero(3, 3), 2.0) - Matrix::Identity(3, 3)).norm() < 1e-14);

  Matrix A = Matrix::Zero(2, 2);
  A.diagonal() << -1, -2;
  const DecayEnvelope env = decay_envelope(A);
  CHECK(env.alpha == doctest::Approx(0.95));
  CHECK(env.c >= 1.0 - 1e-9);

  Matrix A2(2, 2);
  A2 << -1, 10, 0, -1;
  const DecayEnvelope env2 = decay_envelope(A2);
  CHECK(env2.c > 1.0);
  for (int k = 0; k <= 200; ++k) {
    const double t = 0.05 * k;
    const Eigen::JacobiSVD<Matrix> svd(expm(A2, t));
    CHECK(svd.singularValues()(0) <= env2.c * std::exp(-env2.alpha * t) + 1e-9);
  }
  CHECK_THROWS_AS(decay_envelope(Matrix::Zero(2, 2)), NotHurwitz);
}

TEST_CASE("spectral radius submultiplicative bound for nonnegative pairs") {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int it = 0; it < 200; ++it) {
    const int n = 2 + static_cast<int>(rng() % 7);
    Matrix L = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) L(i, i) = (u(rng) < 1.0 / 3.0) ? 0.0 : u(rng);
    Matrix Q(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) Q(i, j) = u(rng);
    CHECK(spectral_radius(L * Q) <=
          spectral_radius(L) * spectral_radius(Q) + 1e-10);
  }
}

TEST_CASE("minimal realization preserves Markov parameters") {
  for (int it = 0; it < 10; ++it) {
    const int n = 3 + static_cast<int>(rng() % 3);
    StateSpace sys{random_matrix(n, n), random_matrix(n, 2), random_matrix(2, n),
                   random_matrix(2, 2)};
    // Append an unreachable, unobservable mode.
    StateSpace padded;
    padded.A = Matrix::Zero(n + 1, n + 1);
    padded.A.topLeftCorner(n, n) = sys.A;
    padded.A(n, n) = 3.0;
    padded.B = Matrix::Zero(n + 1, 2);
    padded.B.topRows(n) = sys.B;
    padded.C = Matrix::Zero(2, n + 1);
    padded.C.leftCols(n) = sys.C;
    padded.D = sys.D;
    const StateSpace min = minimal_realization(padded);
    CHECK(min.A.rows() <= n);
    Matrix Pk1 = min.B, Pk2 = sys.B;
    CHECK((min.D - sys.D).norm() < 1e-12);
    for (int k = 0; k < 10; ++k) {
      CHECK((min.C * Pk1 - sys.C * Pk2).norm() <=
            1e-9 * (1 + (sys.C * Pk2).norm()));
      Pk1 = min.A * Pk1;
      Pk2 = sys.A * Pk2;
    }
  }
}
