#include "coopreg/synthesis.hpp"

namespace coopreg {

std::pair<Matrix, Matrix> augmented_pair(const AgentPlant& agent,
                                         const PCopyInternalModel& im) {
  check_plant(agent);
  const int n = agent.n(), m = agent.m();
  if (im.G2.cols() != agent.p())
    throw DimensionMismatch("augmented_pair: internal model p does not match agent");
  const int nz = static_cast<int>(im.G1.rows());

  Matrix Abar(n + nz, n + nz);
  Abar << agent.A, Matrix::Zero(n, nz), im.G2 * agent.C, im.G1;
  Matrix Bbar(n + nz, m);
  Bbar << agent.B, im.G2 * agent.D;
  return {Abar, Bbar};
}

StateFeedbackGains synthesize_state_feedback(const AgentPlant& agent,
                                             const PCopyInternalModel& im,
                                             const std::optional<Matrix>& Q,
                                             const std::optional<Matrix>& R) {
  const auto [Abar, Bbar] = augmented_pair(agent, im);
  const auto nbar = Abar.rows();
  const auto m = Bbar.cols();
  if (!pbh_stabilizable(Abar, Bbar))
    throw NotStabilizable("synthesize_state_feedback: augmented pair not stabilizable");

  const Matrix Qm = Q ? *Q : Matrix::Identity(nbar, nbar);
  const Matrix Rm = R ? *R : Matrix::Identity(m, m);
  const Matrix P = care_solve(Abar, Bbar, Qm, Rm);
  const Matrix K = -Rm.llt().solve(Bbar.transpose() * P);

  StateFeedbackGains gains;
  gains.K1 = K.leftCols(agent.n());
  gains.K2 = K.rightCols(nbar - agent.n());

  if (!is_hurwitz(Abar + Bbar * K))
    throw NoStabilizingSolution("synthesize_state_feedback: A_fi not Hurwitz");
  return gains;
}

ObserverGains synthesize_observer(const AgentPlant& agent, ObserverKind kind,
                                  const std::optional<Matrix>& Q,
                                  const std::optional<Matrix>& R) {
  check_plant(agent);
  Matrix C_o;
  if (kind == ObserverKind::LocalMeasurement) {
    if (!agent.C_m)
      throw MissingMeasurement("synthesize_observer: agent has no C_m");
    C_o = *agent.C_m;
  } else {
    C_o = agent.C;
  }
  if (!pbh_detectable(agent.A, C_o))
    throw NotDetectable("synthesize_observer: pair not detectable");

  const auto n = agent.n();
  const Matrix Qm = Q ? *Q : Matrix::Identity(n, n);
  const Matrix Rm = R ? *R : Matrix::Identity(C_o.rows(), C_o.rows());
  const Matrix P = care_solve(agent.A.transpose(), C_o.transpose(), Qm, Rm);
  const Matrix gain = P * C_o.transpose() * Rm.llt().solve(Matrix::Identity(C_o.rows(), C_o.rows()));

  if (!is_hurwitz(agent.A - gain * C_o))
    throw NoStabilizingSolution("synthesize_observer: observer loop not Hurwitz");

  ObserverGains out;
  if (kind == ObserverKind::LocalMeasurement)
    out.H = gain;
  else
    out.L = gain;
  return out;
}

LocalLoop local_loop(const AgentPlant& agent, const PCopyInternalModel& im,
                     const StateFeedbackGains& gains,
                     const std::optional<ObserverGains>& observer) {
  check_plant(agent);
  const int n = agent.n();
  const int nz = static_cast<int>(im.G1.rows());
  const int p = agent.p();
  if (gains.K1.cols() != n || gains.K2.cols() != nz ||
      gains.K1.rows() != agent.m() || gains.K2.rows() != agent.m())
    throw DimensionMismatch("local_loop: gain dimensions");

  const Matrix& A = agent.A;
  const Matrix& B = agent.B;
  const Matrix& C = agent.C;
  const Matrix& D = agent.D;
  const Matrix& K1 = gains.K1;
  const Matrix& K2 = gains.K2;

  LocalLoop loop;
  loop.A_f.resize(n + nz, n + nz);
  loop.A_f << A + B * K1, B * K2, im.G2 * (C + D * K1), im.G1 + im.G2 * D * K2;
  loop.B_f.resize(n + nz, p);
  loop.B_f << Matrix::Zero(n, p), -im.G2;
  loop.C_f.resize(p, n + nz);
  loop.C_f << C + D * K1, D * K2;

  if (observer && observer->L) {
    const Matrix& L = *observer->L;
    if (L.rows() != n || L.cols() != p)
      throw DimensionMismatch("local_loop: L must be n x p");
    Matrix A_F(2 * n + nz, 2 * n + nz);
    A_F << A, B * K1, B * K2,
        L * C, A + B * K1 - L * C, B * K2,
        im.G2 * C, im.G2 * D * K1, im.G1 + im.G2 * D * K2;
    Matrix B_F(2 * n + nz, p);
    B_F << Matrix::Zero(n, p), -L, -im.G2;
    Matrix C_F(p, 2 * n + nz);
    C_F << C, D * K1, D * K2;
    loop.A_F = A_F;
    loop.B_F = B_F;
    loop.C_F = C_F;
    loop.A_L = A - L * C;
  }
  return loop;
}

LocalConditionResult check_local_condition(const LocalLoop& loop, double rho_FA,
                                           ControlLaw which) {
  const Matrix* A = &loop.A_f;
  const Matrix* B = &loop.B_f;
  const Matrix* C = &loop.C_f;
  if (which == ControlLaw::OutputFeedback) {
    if (!loop.A_F)
      throw MissingGains("check_local_condition: no output-feedback loop built");
    A = &*loop.A_F;
    B = &*loop.B_F;
    C = &*loop.C_F;
  }
  if (!is_hurwitz(*A))
    throw NotHurwitz("check_local_condition: loop matrix is not Hurwitz");

  LocalConditionResult r;
  r.hinf = hinf_norm(*A, *B, *C, Matrix::Zero(C->rows(), B->cols()));
  r.product = r.hinf * rho_FA;
  r.margin = 1.0 - r.product;
  r.pass = r.product < 1.0;
  r.conservative_pass = r.hinf <= 1.0;
  return r;
}

}  // namespace coopreg
