#include "coopreg/internal_model.hpp"

#include <iostream>

namespace coopreg {

Matrix companion_matrix(const Vector& monic_coeffs) {
  const int s = static_cast<int>(monic_coeffs.size()) - 1;
  if (s < 1 || monic_coeffs(s) != 1.0)
    throw ValidationError("companion_matrix: need a monic polynomial of degree >= 1");
  Matrix beta = Matrix::Zero(s, s);
  for (int i = 0; i + 1 < s; ++i) beta(i, i + 1) = 1.0;
  for (int j = 0; j < s; ++j) beta(s - 1, j) = -monic_coeffs(j);
  return beta;
}

PCopyInternalModel build_pcopy(const Matrix& A0, int p) {
  if (A0.rows() != A0.cols()) throw NonSquare("build_pcopy: A0 must be square");
  if (p <= 0) throw ValidationError("build_pcopy: p must be positive");
  if (A0.size() > 0 && eigenvalues(A0).real().minCoeff() < -1e-9 * (1.0 + A0.norm()))
    std::cerr << "build_pcopy: warning: A0 has an eigenvalue with negative real "
                 "part (Assumption 1 advisory check)\n";

  PCopyInternalModel im;
  im.p = p;
  const Vector m = minimal_polynomial(A0);
  im.s = static_cast<int>(m.size()) - 1;
  im.beta = companion_matrix(m);
  im.sigma = Vector::Zero(im.s);
  im.sigma(im.s - 1) = 1.0;
  im.G1 = kron(Matrix::Identity(p, p), im.beta);
  im.G2 = kron(Matrix::Identity(p, p), im.sigma);
  return im;
}

bool verify_pcopy_canonical(const Matrix& G1, const Matrix& G2, const Matrix& A0,
                            int p) {
  if (p <= 0 || G1.rows() != G1.cols() || G1.rows() % p != 0 || G2.rows() != G1.rows() ||
      G2.cols() != p)
    throw DimensionMismatch("verify_pcopy_canonical: G1/G2 dimensions inconsistent with p");
  const int s = static_cast<int>(G1.rows()) / p;
  const Vector m = minimal_polynomial(A0);

  for (int l = 0; l < p; ++l) {
    const Matrix beta = G1.block(l * s, l * s, s, s);
    const Vector sigma = G2.block(l * s, l, s, 1);

    // Off-block-diagonal parts must vanish.
    Matrix G1_check = G1;
    G1_check.block(l * s, l * s, s, s).setZero();
    for (int k = 0; k < p; ++k)
      G1_check.block(k * s, k * s, s, s).setZero();
    if (G1_check.norm() > 1e-12 * (1.0 + G1.norm())) return false;
    Matrix G2_check = G2;
    for (int k = 0; k < p; ++k) G2_check.block(k * s, k, s, 1).setZero();
    if (G2_check.norm() > 1e-12 * (1.0 + G2.norm())) return false;

    if (!controllable(beta, sigma)) return false;

    const Vector chi = characteristic_polynomial(beta);
    if (chi.size() != m.size()) return false;
    if ((chi - m).cwiseAbs().maxCoeff() > 1e-8 * (1.0 + m.cwiseAbs().maxCoeff()))
      return false;
  }
  return true;
}

}  // namespace coopreg
