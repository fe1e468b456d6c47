#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "coopreg/exo_sim.hpp"
#include "coopreg/synthesis.hpp"

namespace coopreg {

// Everything needed to check, synthesize for, and simulate one network.
struct Scenario {
  std::string name;
  ControlLaw law = ControlLaw::StateFeedback;
  Matrix A0;
  AugmentedGraph graph;
  std::vector<AgentPlant> agents;
  std::vector<Vector> x0;  // per-agent plant initial states
  ExoInterface exo;

  // Exosystem realization: "example1", "example2", or "linear" (autonomous
  // omega' = S omega started at omega0).
  std::string exo_kind;
  std::optional<Matrix> exo_S;
  std::optional<Vector> exo_omega0;

  std::optional<std::vector<StateFeedbackGains>> gains;
  std::optional<std::vector<ObserverGains>> observers;

  double t_final = 100.0;
  double dt = 1e-3;
  double epsilon = 0.05;          // slack added on top of the ultimate bound
  std::optional<double> kappa;    // pinned mismatch bound, else estimated

  int N() const { return static_cast<int>(agents.size()); }
};

// Structural consistency beyond JSON shape: matrix dimensions, graph size,
// gain sizes when present. Throws ValidationError.
void check_scenario(const Scenario& sc);

Scenario load_scenario(const std::string& path);
void save_scenario(const Scenario& sc, const std::string& path);
std::string scenario_to_json(const Scenario& sc);
Scenario scenario_from_json(const std::string& text);

// Instantiate the exosystem signal, cached/valid through t >= horizon.
std::unique_ptr<ExoSignal> make_signal(const Scenario& sc, double horizon);

// Build the global initial state (plant states from the scenario, observer and
// internal-model states zero) for the given assembled loop.
Vector initial_state(const Scenario& sc, const ClosedLoop& cl);

}  // namespace coopreg
