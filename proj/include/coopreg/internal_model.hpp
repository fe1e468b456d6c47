#pragma once

#include "coopreg/numlin.hpp"

namespace coopreg {

// p-copy internal model of A0 in canonical block form: G1 = diag(beta, ..., beta),
// G2 = diag(sigma, ..., sigma), with beta the companion matrix of the minimal
// polynomial of A0 and sigma = (0, ..., 0, 1)'.
struct PCopyInternalModel {
  int p = 0;
  int s = 0;       // degree of the minimal polynomial of A0
  Matrix G1;       // (p s) x (p s)
  Matrix G2;       // (p s) x p
  Matrix beta;     // s x s companion block
  Vector sigma;    // s x 1
};

PCopyInternalModel build_pcopy(const Matrix& A0, int p);

// Canonical-form verification: G1, G2 block diagonal with p controllable pairs
// (beta_l, sigma_l) whose characteristic polynomial equals the minimal
// polynomial of A0 (coefficient-wise, tolerance 1e-8).
bool verify_pcopy_canonical(const Matrix& G1, const Matrix& G2, const Matrix& A0,
                            int p);

// Companion matrix (super-diagonal ones, negated coefficients in the bottom
// row) of a monic polynomial given by ascending coefficients.
Matrix companion_matrix(const Vector& monic_coeffs);

}  // namespace coopreg
