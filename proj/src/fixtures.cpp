#include "coopreg/fixtures.hpp"

namespace coopreg {

namespace {

// Directed communication graph shared by both benchmarks: followers 1 and 2
// hear the leader; information flows 1,2 -> 3 -> 4 -> 5 -> 1.
AugmentedGraph benchmark_graph() {
  AugmentedGraph g;
  g.adjacency = Matrix::Zero(5, 5);
  g.adjacency(2, 0) = 1;  // 1 -> 3
  g.adjacency(2, 1) = 1;  // 2 -> 3
  g.adjacency(3, 2) = 1;  // 3 -> 4
  g.adjacency(4, 3) = 1;  // 4 -> 5
  g.adjacency(0, 4) = 1;  // 5 -> 1
  g.leader_gains = Vector::Zero(5);
  g.leader_gains(0) = 1;
  g.leader_gains(1) = 1;
  return g;
}

AgentPlant second_order_agent() {
  AgentPlant ag;
  ag.A = Matrix(2, 2);
  ag.A << -1, 1, 0.2, 0;
  ag.B = Matrix(2, 1);
  ag.B << 1, 2;
  ag.C = Matrix(1, 2);
  ag.C << 1, 0;
  ag.D = Matrix(1, 1);
  ag.D << 0.1;
  return ag;
}

AgentPlant third_order_agent() {
  AgentPlant ag;
  ag.A = Matrix(3, 3);
  ag.A << 0, 1, 0, 0, 2, 1, 0, 0, 0;
  ag.B = Matrix(3, 2);
  ag.B << 0, 0, 1, 0, 0, 1;
  ag.C = Matrix(1, 3);
  ag.C << 1, 0, 0.4;
  ag.D = Matrix::Zero(1, 2);
  return ag;
}

std::vector<Vector> benchmark_x0() {
  std::vector<Vector> x0(5);
  x0[0] = (Vector(2) << 1, 0.6).finished();
  x0[1] = (Vector(3) << -0.5, 0, -0.2).finished();
  x0[2] = (Vector(3) << -0.2, -0.3, 0).finished();
  x0[3] = (Vector(2) << 0.6, 0).finished();
  x0[4] = (Vector(2) << 0, 0.5).finished();
  return x0;
}

}  // namespace

Scenario example1_scenario() {
  Scenario sc;
  sc.name = "example1";
  sc.law = ControlLaw::StateFeedback;
  sc.exo_kind = "example1";
  sc.A0 = Matrix::Zero(4, 4);
  sc.graph = benchmark_graph();
  sc.exo.R_r = Matrix::Ones(1, 1);
  sc.exo.q_r = 1;
  sc.exo.q_delta = 3;

  sc.agents.resize(5);
  sc.agents[0] = second_order_agent();
  sc.agents[3] = second_order_agent();
  sc.agents[4] = second_order_agent();
  sc.agents[1] = third_order_agent();
  sc.agents[2] = third_order_agent();
  sc.agents[0].E_delta = Matrix(2, 3);
  sc.agents[0].E_delta << 0, 1, 0, 0, 0, 0;
  sc.agents[1].E_delta = Matrix(3, 3);
  sc.agents[1].E_delta << 0, 0, 1, 0, 0, 0, 0, 0, 0.5;
  sc.agents[2].E_delta = Matrix(3, 3);
  sc.agents[2].E_delta << 0, -0.5, 0, 0, 0, -1, 0, 0.4, 0;
  sc.agents[3].E_delta = Matrix(2, 3);
  sc.agents[3].E_delta << 0.1, 0, 0, 0, 0, -0.1;
  sc.agents[4].E_delta = Matrix(2, 3);
  sc.agents[4].E_delta << 0, 0, 0, -0.1, -0.2, 0;

  sc.x0 = benchmark_x0();

  std::vector<StateFeedbackGains> gains(5);
  StateFeedbackGains g2;  // second-order agents
  g2.K1 = Matrix(1, 2);
  g2.K1 << -1.1960, -0.9611;
  g2.K2 = Matrix(1, 1);
  g2.K2 << -1.4142;
  StateFeedbackGains g3;  // third-order agents
  g3.K1 = Matrix(2, 3);
  g3.K1 << -4.2328, -5.3904, -1.4038, -1.2604, -1.4038, -1.7115;
  g3.K2 = Matrix(2, 1);
  g3.K2 << -1.2788, -1.3655;
  gains[0] = g2;
  gains[3] = g2;
  gains[4] = g2;
  gains[1] = g3;
  gains[2] = g3;
  sc.gains = std::move(gains);

  sc.t_final = 300.0;
  sc.dt = 1e-3;
  sc.epsilon = 0.05;
  return sc;
}

Scenario example2_scenario() {
  Scenario sc;
  sc.name = "example2";
  sc.law = ControlLaw::OutputFeedback;
  sc.exo_kind = "example2";
  sc.A0 = Matrix(3, 3);
  sc.A0 << 0, 0.5, 0, -0.5, 0, 0, 0, 0, 0;
  sc.graph = benchmark_graph();
  sc.exo.R_r = Matrix(1, 2);
  sc.exo.R_r << 1, 0;
  sc.exo.q_r = 2;
  sc.exo.q_delta = 1;

  sc.agents.resize(5);
  sc.agents[0] = second_order_agent();
  sc.agents[3] = second_order_agent();
  sc.agents[4] = second_order_agent();
  sc.agents[1] = third_order_agent();
  sc.agents[2] = third_order_agent();
  sc.agents[0].E_delta = (Matrix(2, 1) << 1, 0).finished();
  sc.agents[1].E_delta = (Matrix(3, 1) << 0, 1, 0).finished();
  sc.agents[2].E_delta = (Matrix(3, 1) << -1.5, 0, 0.3).finished();
  sc.agents[3].E_delta = (Matrix(2, 1) << 0, 2).finished();
  sc.agents[4].E_delta = (Matrix(2, 1) << 0.2, -0.2).finished();

  sc.x0 = benchmark_x0();

  std::vector<StateFeedbackGains> gains(5);
  std::vector<ObserverGains> observers(5);
  StateFeedbackGains g2;
  g2.K1 = Matrix(1, 2);
  g2.K1 << -5.1794, -0.7932;
  g2.K2 = Matrix(1, 3);
  g2.K2 << -2, -5.4458, -10.3182;
  ObserverGains o2;
  o2.L = (Matrix(2, 1) << 17, 80.2).finished();
  StateFeedbackGains g3;
  g3.K1 = Matrix(2, 3);
  g3.K1 << -6.1916, -5.7686, -1.7835, -3.9299, -1.7835, -2.4282;
  g3.K2 = Matrix(2, 3);
  g3.K2 << -0.4513, -0.9173, -3.3839, -0.8924, -2.2285, -5.6377;
  ObserverGains o3;
  o3.L = (Matrix(3, 1) << -187, 756, 600).finished();
  gains[0] = g2;
  gains[3] = g2;
  gains[4] = g2;
  gains[1] = g3;
  gains[2] = g3;
  observers[0] = o2;
  observers[3] = o2;
  observers[4] = o2;
  observers[1] = o3;
  observers[2] = o3;
  sc.gains = std::move(gains);
  sc.observers = std::move(observers);

  sc.t_final = 300.0;
  sc.dt = 1e-3;
  sc.epsilon = 0.05;
  return sc;
}

}  // namespace coopreg
