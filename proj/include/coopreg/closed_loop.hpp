#pragma once

#include <optional>
#include <vector>

#include "coopreg/synthesis.hpp"

namespace coopreg {

// Assembled global closed loop x' = A_cl x + B_cl omega_a, e = C_cl x + D_cl omega_a.
struct ClosedLoop {
  ControlLaw law = ControlLaw::StateFeedback;
  Matrix A_cl, B_cl, C_cl, D_cl;
  Matrix A0a;  // I_N kron A0
  Matrix R_a;  // I_N kron R
  Matrix W_e;  // graph coupling mapping e to the virtual output ev = W_e e
  int N = 0;
  int p = 0;

  // Offsets of the x, (x_hat,) z blocks within the global state.
  int offset_x = 0;
  int offset_xhat = -1;  // -1 when the law carries no observer states
  int offset_z = 0;
  int state_dim() const { return static_cast<int>(A_cl.rows()); }
};

ClosedLoop assemble(ControlLaw law, const std::vector<AgentPlant>& agents,
                    const std::vector<PCopyInternalModel>& ims,
                    const std::vector<StateFeedbackGains>& gains,
                    const std::vector<ObserverGains>& observers,
                    const GraphMatrices& gm, const ExoInterface& exo,
                    const Matrix& A0);

// Multiset equality sigma(X) == sigma(Y1) union sigma(Y2) within tol.
bool eig_multiset_equal(const Matrix& X, const Matrix& Y1, const Matrix& Y2,
                        double tol = 1e-7);

// Theorem-3 similarity: sigma(A_eta) = sigma(A_g) union sigma(A_H), where
// eta_loop is the OutputFeedbackLocal assembly and g_loop the StateFeedback
// assembly with the same gains; A_H = diag(A_i - H_i C_mi).
bool verify_theorem3_similarity(const ClosedLoop& eta_loop, const ClosedLoop& g_loop,
                                const Matrix& A_H, double tol = 1e-7);

struct RegulatorSolution {
  Matrix X;
  double residual_sylvester = 0.0;
  double residual_regulation = 0.0;  // ||C_cl X + D_cl||_F
};

// X A0a = A_cl X + B_cl, with the regulation residual C_cl X + D_cl recorded.
RegulatorSolution solve_regulator(const ClosedLoop& cl);

struct UltimateBound {
  double c = 0.0;
  double alpha = 0.0;
  double kappa = 0.0;
  double b_prime = 0.0;
  double epsilon = 0.0;
  double b = 0.0;

  // T = ln(c ||C_cl|| ||xbar0|| / epsilon) / alpha, clamped at zero. Needs the
  // true initial offset xbar0 = x0 - X omega_a(0), unknown to a deployed
  // controller.
  double settling_time(double c_norm_xbar0) const;
  double C_norm = 0.0;
};

UltimateBound ultimate_bound(const ClosedLoop& cl, const RegulatorSolution& sol,
                             double kappa, double epsilon);

}  // namespace coopreg
