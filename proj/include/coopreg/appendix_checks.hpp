#pragma once

#include <string>
#include <vector>

#include "coopreg/numlin.hpp"

namespace coopreg {

// One decidable claim inside a counterexample report.
struct CounterexampleClaim {
  std::string description;
  bool expected = false;
  bool computed = false;
};

struct CounterexampleReport {
  std::string name;
  std::vector<CounterexampleClaim> claims;
  bool pass = false;

  void add(const std::string& description, bool expected, bool computed) {
    claims.push_back({description, expected, computed});
  }
  void finish() {
    pass = true;
    for (const auto& c : claims) pass = pass && (c.expected == c.computed);
  }
};

// Notation translation (prior-work appendices -> this toolkit):
//   (F_i, G_i)  internal-model pair        -> (G1, G2)
//   (K_i, H_i)  feedback / injection gains -> (K1, K2)
//   S           exosystem matrix           -> A0
//   Q*          row-stochastic weight matrix; its follower block equals FA
//   A_l         global closed-loop matrix  -> A_cl (state feedback)
//   A~_i        per-agent local loop       -> A_f of local_loop

// Internal-model pair whose characteristic polynomial strictly contains the
// exosystem's minimal polynomial: the augmented pair picks up an
// uncontrollable unstable mode.
CounterexampleReport appendix_a_first();

// Three-agent network where one local loop is unstable although the global
// closed loop is Hurwitz, so agent-wise stability is not necessary.
CounterexampleReport appendix_a_second();

// Single-agent loop whose transfer matrix is stable and whose small-gain
// product vanishes, yet the state matrix is not Hurwitz because the unstable
// mode is neither controllable nor observable.
CounterexampleReport appendix_b();

std::vector<CounterexampleReport> run_all_counterexamples();

}  // namespace coopreg
