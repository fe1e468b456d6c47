#pragma once

#include <optional>

#include "coopreg/internal_model.hpp"
#include "coopreg/plant.hpp"

namespace coopreg {

struct StateFeedbackGains {
  Matrix K1;  // m_i x n_i
  Matrix K2;  // m_i x (p s)
};

struct ObserverGains {
  std::optional<Matrix> H;  // n_i x p_i, local-measurement observer
  std::optional<Matrix> L;  // n_i x p, distributed observer
};

enum class ObserverKind { LocalMeasurement, Distributed };

// (A_bar, B_bar) = ([[A, 0], [G2 C, G1]], [B; G2 D]).
std::pair<Matrix, Matrix> augmented_pair(const AgentPlant& agent,
                                         const PCopyInternalModel& im);

// LQR on the augmented pair (default Q = I, R = I); the resulting A_fi is
// verified Hurwitz.
StateFeedbackGains synthesize_state_feedback(
    const AgentPlant& agent, const PCopyInternalModel& im,
    const std::optional<Matrix>& Q = std::nullopt,
    const std::optional<Matrix>& R = std::nullopt);

// Dual LQR observer gain; A_i - H_i C_mi (resp. A_i - L_i C_i) verified Hurwitz.
ObserverGains synthesize_observer(const AgentPlant& agent, ObserverKind kind,
                                  const std::optional<Matrix>& Q = std::nullopt,
                                  const std::optional<Matrix>& R = std::nullopt);

// Per-agent closed-loop blocks: the state-feedback loop (A_f, B_f, C_f) always,
// the output-feedback loop (A_F, B_F, C_F) when a distributed observer gain L
// is supplied.
struct LocalLoop {
  Matrix A_f, B_f, C_f;
  std::optional<Matrix> A_F, B_F, C_F;
  std::optional<Matrix> A_L;  // A_i - L_i C_i, for the Remark-7 identity
};

LocalLoop local_loop(const AgentPlant& agent, const PCopyInternalModel& im,
                     const StateFeedbackGains& gains,
                     const std::optional<ObserverGains>& observer = std::nullopt);

struct LocalConditionResult {
  double hinf = 0.0;     // ||g||_inf of the relevant loop
  double product = 0.0;  // ||g||_inf * rho(FA)
  double margin = 0.0;   // 1 - product
  bool pass = false;
  bool conservative_pass = false;  // graph-free variant ||g||_inf <= 1
};

// The agent-wise sufficient condition ||g||_inf * rho(FA) < 1.
LocalConditionResult check_local_condition(const LocalLoop& loop, double rho_FA,
                                           ControlLaw which);

}  // namespace coopreg
