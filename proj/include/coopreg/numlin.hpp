#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "coopreg/errors.hpp"

namespace coopreg {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Eigenvalues of a square real matrix.
Eigen::VectorXcd eigenvalues(const Matrix& M);

// True iff every eigenvalue satisfies Re(lambda) < -tol.
bool is_hurwitz(const Matrix& M, double tol = 0.0);

double spectral_radius(const Matrix& M);

// Rank of a complex matrix: singular values below rel_tol * sigma_max count as zero.
int rank_svd(const Eigen::MatrixXcd& M, double rel_tol = 1e-9);

// Solves X*B = A*X + C via Bartels-Stewart on the complex Schur forms.
// Requires sigma(A) and sigma(B) disjoint; throws SpectraOverlap otherwise.
Matrix sylvester_solve(const Matrix& A, const Matrix& B, const Matrix& C);

// PBH tests: rank [A - lambda I, B] (resp. [A - lambda I; C]) full at every
// eigenvalue of A with nonnegative real part.
bool pbh_stabilizable(const Matrix& A, const Matrix& B);
bool pbh_detectable(const Matrix& A, const Matrix& C);

// Rank of [[A - lambda I, B], [C, D]] equals n + p at each given lambda.
bool transmission_zero_rank_ok(const Matrix& A, const Matrix& B, const Matrix& C,
                               const Matrix& D,
                               const std::vector<std::complex<double>>& lambdas);

// H-infinity norm of C (sI - A)^-1 B + D for Hurwitz A. Bisection on gamma with
// the imaginary-axis-eigenvalue test of the associated Hamiltonian matrix.
double hinf_norm(const Matrix& A, const Matrix& B, const Matrix& C, const Matrix& D,
                 double rel_tol = 1e-6);

// Stabilizing solution of A'P + PA - P B R^-1 B' P + Q = 0 via the invariant
// subspace of the 2n x 2n Hamiltonian (ordered complex Schur form).
Matrix care_solve(const Matrix& A, const Matrix& B, const Matrix& Q, const Matrix& R);

// Monic minimal polynomial, ascending coefficients: m(s) = c0 + c1 s + ... + s^deg.
// Returned vector has length deg + 1 with trailing 1.
Vector minimal_polynomial(const Matrix& A);

// Characteristic polynomial (Faddeev-LeVerrier), same ascending/monic layout.
Vector characteristic_polynomial(const Matrix& A);

// Matrix exponential e^(A t) (scaling-and-squaring with Pade approximant).
Matrix expm(const Matrix& A, double t = 1.0);

struct DecayEnvelope {
  double c = 0.0;
  double alpha = 0.0;
};

// Fits ||e^(At)||_2 <= c e^(-alpha t) for Hurwitz A: alpha = 0.95 min(-Re lambda),
// c maximized over a log time grid and re-verified on a denser one.
DecayEnvelope decay_envelope(const Matrix& A);

struct StateSpace {
  Matrix A, B, C, D;
};

// Kalman decomposition: restriction to the controllable-and-observable subspace.
// Preserves the transfer matrix (Markov parameters).
StateSpace minimal_realization(const StateSpace& sys);

bool controllable(const Matrix& A, const Matrix& B, double rel_tol = 1e-9);
bool observable(const Matrix& A, const Matrix& C, double rel_tol = 1e-9);

Matrix kron(const Matrix& A, const Matrix& B);

}  // namespace coopreg
