#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coopreg/graph.hpp"
#include "coopreg/numlin.hpp"

namespace coopreg {

enum class ControlLaw { StateFeedback, OutputFeedbackLocal, OutputFeedback };

std::string to_string(ControlLaw law);
ControlLaw control_law_from_string(const std::string& s);

// One agent's dynamics: x' = A x + B u + E_delta * delta, y = C x + D u,
// optionally a local measurement y_m = C_m x + D_m u.
struct AgentPlant {
  Matrix A, B, C, D, E_delta;
  std::optional<Matrix> C_m, D_m;

  int n() const { return static_cast<int>(A.rows()); }
  int m() const { return static_cast<int>(B.cols()); }
  int p() const { return static_cast<int>(C.rows()); }
};

void check_plant(const AgentPlant& agent);

// Splits the exosystem state into reference part r_0 (q_r) and disturbance
// part delta (q_delta); E_i = [0 E_delta_i], R = [R_r 0].
struct ExoInterface {
  Matrix R_r;
  int q_r = 0;
  int q_delta = 0;

  int q() const { return q_r + q_delta; }
  Matrix R() const;
  Matrix E(const AgentPlant& agent) const;
};

struct AssumptionReport {
  struct AgentChecks {
    bool a4 = false;                 // (A_i, B_i) stabilizable
    bool a5 = false;                 // transmission zeros clear of sigma(A0)
    std::optional<bool> a7;          // (A_i, C_mi) detectable (local-measurement law)
    std::optional<bool> a8;          // (A_i, C_i) detectable (output-feedback law)
    std::string diagnostics;
  };
  bool a1 = false;  // A0 has no eigenvalue with negative real part
  bool a3 = false;  // spanning tree rooted at the leader
  std::vector<AgentChecks> agents;

  bool all_pass(ControlLaw law) const;
  std::string summary(ControlLaw law) const;
};

bool assumption1_holds(const Matrix& A0);

AssumptionReport validate(const std::vector<AgentPlant>& agents,
                          const ExoInterface& exo, const Matrix& A0,
                          const AugmentedGraph& g, ControlLaw law);

}  // namespace coopreg
