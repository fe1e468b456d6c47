#include "coopreg/closed_loop.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <complex>

#include "coopreg/errors.hpp"

namespace coopreg {

namespace {

// Stack per-agent blocks along the diagonal of a dense zero matrix.
Matrix blkdiag(const std::vector<Matrix>& blocks) {
  Eigen::Index rows = 0, cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  Matrix out = Matrix::Zero(rows, cols);
  Eigen::Index r = 0, c = 0;
  for (const auto& b : blocks) {
    out.block(r, c, b.rows(), b.cols()) = b;
    r += b.rows();
    c += b.cols();
  }
  return out;
}

Matrix vstack(const std::vector<Matrix>& blocks) {
  Eigen::Index rows = 0;
  Eigen::Index cols = blocks.empty() ? 0 : blocks.front().cols();
  for (const auto& b : blocks) rows += b.rows();
  Matrix out = Matrix::Zero(rows, cols);
  Eigen::Index r = 0;
  for (const auto& b : blocks) {
    out.middleRows(r, b.rows()) = b;
    r += b.rows();
  }
  return out;
}

double spectral_norm(const Matrix& M) {
  if (M.size() == 0) return 0.0;
  return Eigen::JacobiSVD<Matrix>(M).singularValues()(0);
}

}  // namespace

ClosedLoop assemble(ControlLaw law, const std::vector<AgentPlant>& agents,
                    const std::vector<PCopyInternalModel>& ims,
                    const std::vector<StateFeedbackGains>& gains,
                    const std::vector<ObserverGains>& observers,
                    const GraphMatrices& gm, const ExoInterface& exo,
                    const Matrix& A0) {
  const int N = static_cast<int>(agents.size());
  if (N == 0) throw ValidationError("assemble: no agents");
  if (static_cast<int>(ims.size()) != N || static_cast<int>(gains.size()) != N)
    throw DimensionMismatch("assemble: agents, internal models and gains must align");
  const int p = agents.front().p();
  const int q = exo.q();
  if (gm.W.rows() != static_cast<Eigen::Index>(N) * p)
    throw DimensionMismatch("assemble: W size does not match N*p");

  std::vector<Matrix> Ab, Bb, Cb, Db, Eb, G1b, G2b, K1b, K2b;
  Ab.reserve(N);
  for (int i = 0; i < N; ++i) {
    const AgentPlant& ag = agents[i];
    check_plant(ag);
    if (ag.p() != p) throw DimensionMismatch("assemble: agents share one output dimension");
    Ab.push_back(ag.A);
    Bb.push_back(ag.B);
    Cb.push_back(ag.C);
    Db.push_back(ag.D);
    Eb.push_back(exo.E(ag));
    G1b.push_back(ims[i].G1);
    G2b.push_back(ims[i].G2);
    K1b.push_back(gains[i].K1);
    K2b.push_back(gains[i].K2);
    if (gains[i].K1.cols() != ag.n() || gains[i].K1.rows() != ag.m())
      throw DimensionMismatch("assemble: K1 dimensions do not match the plant");
    if (gains[i].K2.cols() != ims[i].G1.rows())
      throw DimensionMismatch("assemble: K2 dimensions do not match the internal model");
  }
  const Matrix A = blkdiag(Ab), B = blkdiag(Bb), C = blkdiag(Cb), D = blkdiag(Db);
  const Matrix E = blkdiag(Eb);
  const Matrix G1 = blkdiag(G1b), G2 = blkdiag(G2b);
  const Matrix K1 = blkdiag(K1b), K2 = blkdiag(K2b);
  const Matrix& W = gm.W;
  const Matrix R_a = kron(Matrix::Identity(N, N), exo.R());

  const Eigen::Index nx = A.rows();
  const Eigen::Index nz = G1.rows();

  ClosedLoop cl;
  cl.law = law;
  cl.N = N;
  cl.p = p;
  cl.A0a = kron(Matrix::Identity(N, N), A0);
  cl.R_a = R_a;
  cl.W_e = W;
  cl.offset_x = 0;

  if (law == ControlLaw::StateFeedback) {
    cl.offset_z = static_cast<int>(nx);
    cl.A_cl = Matrix::Zero(nx + nz, nx + nz);
    cl.A_cl.topLeftCorner(nx, nx) = A + B * K1;
    cl.A_cl.topRightCorner(nx, nz) = B * K2;
    cl.A_cl.bottomLeftCorner(nz, nx) = G2 * W * (C + D * K1);
    cl.A_cl.bottomRightCorner(nz, nz) = G1 + G2 * W * D * K2;
    cl.B_cl = Matrix::Zero(nx + nz, N * q);
    cl.B_cl.topRows(nx) = E;
    cl.B_cl.bottomRows(nz) = -G2 * W * R_a;
    cl.C_cl = Matrix::Zero(N * p, nx + nz);
    cl.C_cl.leftCols(nx) = C + D * K1;
    cl.C_cl.rightCols(nz) = D * K2;
    cl.D_cl = -R_a;
    return cl;
  }

  // Both observer laws carry estimator states between the plant and the
  // internal-model blocks: state ordering (x, xhat, z).
  if (static_cast<int>(observers.size()) != N)
    throw MissingGains("assemble: observer gains required for output-feedback laws");
  cl.offset_xhat = static_cast<int>(nx);
  cl.offset_z = static_cast<int>(2 * nx);
  cl.A_cl = Matrix::Zero(2 * nx + nz, 2 * nx + nz);
  cl.B_cl = Matrix::Zero(2 * nx + nz, N * q);
  cl.C_cl = Matrix::Zero(N * p, 2 * nx + nz);
  cl.C_cl.leftCols(nx) = C;
  cl.C_cl.middleCols(nx, nx) = D * K1;
  cl.C_cl.rightCols(nz) = D * K2;
  cl.D_cl = -R_a;

  cl.A_cl.topLeftCorner(nx, nx) = A;
  cl.A_cl.block(0, nx, nx, nx) = B * K1;
  cl.A_cl.topRightCorner(nx, nz) = B * K2;
  cl.A_cl.bottomRightCorner(nz, nz) = G1 + G2 * W * D * K2;
  cl.A_cl.bottomLeftCorner(nz, nx) = G2 * W * C;
  cl.A_cl.block(2 * nx, nx, nz, nx) = G2 * W * D * K1;
  cl.B_cl.topRows(nx) = E;
  cl.B_cl.bottomRows(nz) = -G2 * W * R_a;

  if (law == ControlLaw::OutputFeedbackLocal) {
    std::vector<Matrix> HCb, Hb;
    for (int i = 0; i < N; ++i) {
      if (!observers[i].H) throw MissingGains("assemble: local-measurement observer gain H missing");
      if (!agents[i].C_m) throw MissingMeasurement("assemble: local measurement matrix C_m missing");
      HCb.push_back(*observers[i].H * *agents[i].C_m);
    }
    const Matrix HCm = blkdiag(HCb);
    cl.A_cl.block(nx, 0, nx, nx) = HCm;
    cl.A_cl.block(nx, nx, nx, nx) = A + B * K1 - HCm;
    cl.A_cl.block(nx, 2 * nx, nx, nz) = B * K2;
    return cl;
  }

  // Distributed-observer law: the estimator is driven by the virtual
  // regulated output ev, which couples agents through W.
  std::vector<Matrix> Lb;
  for (int i = 0; i < N; ++i) {
    if (!observers[i].L) throw MissingGains("assemble: distributed observer gain L missing");
    Lb.push_back(*observers[i].L);
  }
  const Matrix L = blkdiag(Lb);
  cl.A_cl.block(nx, 0, nx, nx) = L * W * C;
  cl.A_cl.block(nx, nx, nx, nx) = A + B * K1 - L * (C + D * K1 - W * D * K1);
  cl.A_cl.block(nx, 2 * nx, nx, nz) = (B - L * D + L * W * D) * K2;
  cl.B_cl.middleRows(nx, nx) = -L * W * R_a;
  return cl;
}

bool eig_multiset_equal(const Matrix& X, const Matrix& Y1, const Matrix& Y2,
                        double tol) {
  if (X.rows() != Y1.rows() + Y2.rows()) return false;
  std::vector<std::complex<double>> ex, ey;
  const auto lx = eigenvalues(X);
  for (Eigen::Index i = 0; i < lx.size(); ++i) ex.push_back(lx(i));
  const auto l1 = eigenvalues(Y1);
  for (Eigen::Index i = 0; i < l1.size(); ++i) ey.push_back(l1(i));
  const auto l2 = eigenvalues(Y2);
  for (Eigen::Index i = 0; i < l2.size(); ++i) ey.push_back(l2(i));
  double scale = 1.0;
  for (const auto& v : ex) scale = std::max(scale, std::abs(v));
  // Greedy nearest-neighbour matching; adequate because the spectra either
  // coincide entry-for-entry or differ by far more than tol.
  std::vector<bool> used(ey.size(), false);
  for (const auto& v : ex) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_j = 0;
    for (std::size_t j = 0; j < ey.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(v - ey[j]);
      if (d < best) {
        best = d;
        best_j = j;
      }
    }
    if (best > tol * scale) return false;
    used[best_j] = true;
  }
  return true;
}

bool verify_theorem3_similarity(const ClosedLoop& eta_loop, const ClosedLoop& g_loop,
                                const Matrix& A_H, double tol) {
  if (eta_loop.law != ControlLaw::OutputFeedbackLocal)
    throw ValidationError("verify_theorem3_similarity: first loop must use the local-measurement law");
  if (g_loop.law != ControlLaw::StateFeedback)
    throw ValidationError("verify_theorem3_similarity: second loop must use state feedback");
  return eig_multiset_equal(eta_loop.A_cl, g_loop.A_cl, A_H, tol);
}

RegulatorSolution solve_regulator(const ClosedLoop& cl) {
  if (!is_hurwitz(cl.A_cl))
    throw NotHurwitz("solve_regulator: closed-loop matrix is not Hurwitz");
  RegulatorSolution sol;
  sol.X = sylvester_solve(cl.A_cl, cl.A0a, cl.B_cl);
  const double scale = 1.0 + cl.A_cl.norm() * sol.X.norm() + cl.B_cl.norm();
  sol.residual_sylvester =
      (sol.X * cl.A0a - cl.A_cl * sol.X - cl.B_cl).norm() / scale;
  sol.residual_regulation = (cl.C_cl * sol.X + cl.D_cl).norm();
  return sol;
}

double UltimateBound::settling_time(double c_norm_xbar0) const {
  if (c_norm_xbar0 <= 0.0 || epsilon <= 0.0) return 0.0;
  const double arg = c * C_norm * c_norm_xbar0 / epsilon;
  if (arg <= 1.0) return 0.0;
  return std::log(arg) / alpha;
}

UltimateBound ultimate_bound(const ClosedLoop& cl, const RegulatorSolution& sol,
                             double kappa, double epsilon) {
  const DecayEnvelope env = decay_envelope(cl.A_cl);
  UltimateBound ub;
  ub.c = env.c;
  ub.alpha = env.alpha;
  ub.kappa = kappa;
  ub.C_norm = spectral_norm(cl.C_cl);
  const double Xn = spectral_norm(sol.X);
  ub.b_prime = ub.c * ub.C_norm * Xn * std::sqrt(static_cast<double>(cl.N)) *
               kappa / ub.alpha;
  // epsilon is the user's slack; a nonpositive value asks for the default
  // 1% of b'.
  ub.epsilon = epsilon > 0 ? epsilon : 0.01 * ub.b_prime;
  ub.b = ub.b_prime + ub.epsilon;
  return ub;
}

}  // namespace coopreg
