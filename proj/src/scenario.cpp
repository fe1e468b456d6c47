#include "coopreg/scenario.hpp"

#include <fstream>
#include <sstream>

#include "coopreg/errors.hpp"
#include "json.hpp"

namespace coopreg {

namespace {

using nlohmann::json;

json matrix_to_json(const Matrix& M) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    json r = json::array();
    for (Eigen::Index j = 0; j < M.cols(); ++j) r.push_back(M(i, j));
    rows.push_back(r);
  }
  return rows;
}

json vector_to_json(const Vector& v) {
  json r = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) r.push_back(v(i));
  return r;
}

Matrix matrix_from_json(const json& j, const std::string& field) {
  if (!j.is_array())
    throw ParseError("scenario: field '" + field + "' must be an array of rows");
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  if (rows == 0) return Matrix(0, 0);
  if (!j[0].is_array())
    throw ParseError("scenario: field '" + field + "' rows must be arrays");
  const Eigen::Index cols = static_cast<Eigen::Index>(j[0].size());
  Matrix M(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (!j[i].is_array() || static_cast<Eigen::Index>(j[i].size()) != cols)
      throw ParseError("scenario: ragged rows in field '" + field + "'");
    for (Eigen::Index c = 0; c < cols; ++c) {
      if (!j[i][c].is_number())
        throw ParseError("scenario: non-numeric entry in field '" + field + "'");
      M(i, c) = j[i][c].get<double>();
    }
  }
  return M;
}

Vector vector_from_json(const json& j, const std::string& field) {
  if (!j.is_array())
    throw ParseError("scenario: field '" + field + "' must be an array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!j[i].is_number())
      throw ParseError("scenario: non-numeric entry in field '" + field + "'");
    v(i) = j[i].get<double>();
  }
  return v;
}

const json& require(const json& j, const std::string& field,
                    const std::string& ctx) {
  auto it = j.find(field);
  if (it == j.end())
    throw ParseError("scenario: missing field '" + field + "' in " + ctx);
  return *it;
}

}  // namespace

void check_scenario(const Scenario& sc) {
  if (sc.agents.empty()) throw ValidationError("scenario: no agents");
  const int N = sc.N();
  if (sc.graph.n_followers() != N)
    throw ValidationError("scenario: graph size does not match the agent count");
  check_graph(sc.graph);
  if (sc.A0.rows() != sc.A0.cols() || sc.A0.rows() != sc.exo.q())
    throw ValidationError("scenario: A0 must be q x q with q = q_r + q_delta");
  if (sc.exo.R_r.cols() != sc.exo.q_r)
    throw ValidationError("scenario: R_r must have q_r columns");
  if (static_cast<int>(sc.x0.size()) != N)
    throw ValidationError("scenario: one initial state per agent required");
  const int p = sc.agents.front().p();
  for (int i = 0; i < N; ++i) {
    check_plant(sc.agents[i]);
    if (sc.agents[i].p() != p)
      throw ValidationError("scenario: agents must share one output dimension");
    if (sc.agents[i].E_delta.cols() != sc.exo.q_delta)
      throw ValidationError("scenario: E_delta must have q_delta columns");
    if (sc.x0[i].size() != sc.agents[i].n())
      throw ValidationError("scenario: initial state size mismatch for an agent");
  }
  if (sc.exo.R_r.rows() != p)
    throw ValidationError("scenario: R_r must have p rows");
  if (sc.gains && static_cast<int>(sc.gains->size()) != N)
    throw ValidationError("scenario: one gain set per agent required");
  if (sc.observers && static_cast<int>(sc.observers->size()) != N)
    throw ValidationError("scenario: one observer set per agent required");
  if (sc.t_final <= 0 || sc.dt <= 0 || sc.epsilon <= 0)
    throw ValidationError("scenario: t_final, dt and epsilon must be positive");
  if (sc.exo_kind == "linear") {
    if (!sc.exo_S || !sc.exo_omega0)
      throw ValidationError("scenario: linear exosystem needs S and omega0");
    if (sc.exo_S->rows() != sc.exo.q() || sc.exo_omega0->size() != sc.exo.q())
      throw ValidationError("scenario: linear exosystem dimensions must equal q");
  } else if (sc.exo_kind != "example1" && sc.exo_kind != "example2") {
    throw ValidationError("scenario: unknown exosystem kind '" + sc.exo_kind + "'");
  }
}

std::string scenario_to_json(const Scenario& sc) {
  json j;
  j["name"] = sc.name;
  j["law"] = to_string(sc.law);
  j["A0"] = matrix_to_json(sc.A0);
  j["graph"] = {{"adjacency", matrix_to_json(sc.graph.adjacency)},
                {"leader_gains", vector_to_json(sc.graph.leader_gains)}};
  j["exosystem"]["kind"] = sc.exo_kind;
  j["exosystem"]["q_r"] = sc.exo.q_r;
  j["exosystem"]["q_delta"] = sc.exo.q_delta;
  j["exosystem"]["R_r"] = matrix_to_json(sc.exo.R_r);
  if (sc.exo_S) j["exosystem"]["S"] = matrix_to_json(*sc.exo_S);
  if (sc.exo_omega0) j["exosystem"]["omega0"] = vector_to_json(*sc.exo_omega0);
  j["agents"] = json::array();
  for (int i = 0; i < sc.N(); ++i) {
    const AgentPlant& ag = sc.agents[i];
    json a;
    a["A"] = matrix_to_json(ag.A);
    a["B"] = matrix_to_json(ag.B);
    a["C"] = matrix_to_json(ag.C);
    a["D"] = matrix_to_json(ag.D);
    a["E_delta"] = matrix_to_json(ag.E_delta);
    if (ag.C_m) a["C_m"] = matrix_to_json(*ag.C_m);
    if (ag.D_m) a["D_m"] = matrix_to_json(*ag.D_m);
    a["x0"] = vector_to_json(sc.x0[i]);
    j["agents"].push_back(a);
  }
  if (sc.gains) {
    j["gains"] = json::array();
    for (int i = 0; i < sc.N(); ++i) {
      json g;
      g["K1"] = matrix_to_json((*sc.gains)[i].K1);
      g["K2"] = matrix_to_json((*sc.gains)[i].K2);
      if (sc.observers) {
        if ((*sc.observers)[i].H) g["H"] = matrix_to_json(*(*sc.observers)[i].H);
        if ((*sc.observers)[i].L) g["L"] = matrix_to_json(*(*sc.observers)[i].L);
      }
      j["gains"].push_back(g);
    }
  }
  j["simulation"] = {{"t_final", sc.t_final},
                     {"dt", sc.dt},
                     {"epsilon", sc.epsilon}};
  if (sc.kappa) j["simulation"]["kappa"] = *sc.kappa;
  return j.dump(2) + "\n";
}

Scenario scenario_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& ex) {
    throw ParseError(std::string("scenario: invalid JSON: ") + ex.what());
  }
  Scenario sc;
  sc.name = j.value("name", "");
  sc.law = control_law_from_string(
      require(j, "law", "scenario root").get<std::string>());
  sc.A0 = matrix_from_json(require(j, "A0", "scenario root"), "A0");
  const json& jg = require(j, "graph", "scenario root");
  sc.graph.adjacency =
      matrix_from_json(require(jg, "adjacency", "graph"), "graph.adjacency");
  sc.graph.leader_gains = vector_from_json(
      require(jg, "leader_gains", "graph"), "graph.leader_gains");
  const json& je = require(j, "exosystem", "scenario root");
  sc.exo_kind = require(je, "kind", "exosystem").get<std::string>();
  sc.exo.q_r = require(je, "q_r", "exosystem").get<int>();
  sc.exo.q_delta = require(je, "q_delta", "exosystem").get<int>();
  sc.exo.R_r = matrix_from_json(require(je, "R_r", "exosystem"), "exosystem.R_r");
  if (je.contains("S")) sc.exo_S = matrix_from_json(je["S"], "exosystem.S");
  if (je.contains("omega0"))
    sc.exo_omega0 = vector_from_json(je["omega0"], "exosystem.omega0");
  const json& ja = require(j, "agents", "scenario root");
  if (!ja.is_array() || ja.empty())
    throw ParseError("scenario: 'agents' must be a non-empty array");
  for (const auto& a : ja) {
    AgentPlant ag;
    ag.A = matrix_from_json(require(a, "A", "agent"), "agent.A");
    ag.B = matrix_from_json(require(a, "B", "agent"), "agent.B");
    ag.C = matrix_from_json(require(a, "C", "agent"), "agent.C");
    ag.D = matrix_from_json(require(a, "D", "agent"), "agent.D");
    ag.E_delta =
        matrix_from_json(require(a, "E_delta", "agent"), "agent.E_delta");
    if (ag.E_delta.size() == 0) ag.E_delta = Matrix::Zero(ag.A.rows(), 0);
    if (a.contains("C_m")) ag.C_m = matrix_from_json(a["C_m"], "agent.C_m");
    if (a.contains("D_m")) ag.D_m = matrix_from_json(a["D_m"], "agent.D_m");
    sc.agents.push_back(std::move(ag));
    sc.x0.push_back(vector_from_json(require(a, "x0", "agent"), "agent.x0"));
  }
  if (j.contains("gains")) {
    std::vector<StateFeedbackGains> gains;
    std::vector<ObserverGains> observers;
    bool any_observer = false;
    for (const auto& g : j["gains"]) {
      StateFeedbackGains sfg;
      sfg.K1 = matrix_from_json(require(g, "K1", "gains"), "gains.K1");
      sfg.K2 = matrix_from_json(require(g, "K2", "gains"), "gains.K2");
      gains.push_back(std::move(sfg));
      ObserverGains og;
      if (g.contains("H")) og.H = matrix_from_json(g["H"], "gains.H");
      if (g.contains("L")) og.L = matrix_from_json(g["L"], "gains.L");
      any_observer = any_observer || og.H || og.L;
      observers.push_back(std::move(og));
    }
    sc.gains = std::move(gains);
    if (any_observer) sc.observers = std::move(observers);
  }
  const json& js = require(j, "simulation", "scenario root");
  sc.t_final = require(js, "t_final", "simulation").get<double>();
  sc.dt = require(js, "dt", "simulation").get<double>();
  sc.epsilon = js.value("epsilon", 0.05);
  if (js.contains("kappa")) sc.kappa = js["kappa"].get<double>();
  check_scenario(sc);
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("scenario: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return scenario_from_json(buf.str());
}

void save_scenario(const Scenario& sc, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("scenario: cannot write " + path);
  out << scenario_to_json(sc);
}

std::unique_ptr<ExoSignal> make_signal(const Scenario& sc, double horizon) {
  if (sc.exo_kind == "example1")
    return std::make_unique<Example1Signal>(horizon * 1.05 + 1.0);
  if (sc.exo_kind == "example2")
    return std::make_unique<Example2Signal>(horizon * 1.05 + 1.0);
  if (sc.exo_kind == "linear")
    return std::make_unique<LinearAutonomousSignal>(*sc.exo_S, *sc.exo_omega0,
                                                    sc.exo.q_r);
  throw ValidationError("scenario: unknown exosystem kind '" + sc.exo_kind + "'");
}

Vector initial_state(const Scenario& sc, const ClosedLoop& cl) {
  Vector x = Vector::Zero(cl.state_dim());
  Eigen::Index off = 0;
  for (int i = 0; i < sc.N(); ++i) {
    x.segment(off, sc.x0[i].size()) = sc.x0[i];
    off += sc.x0[i].size();
  }
  return x;
}

}  // namespace coopreg
