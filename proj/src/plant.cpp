#include "coopreg/plant.hpp"

#include <sstream>

namespace coopreg {

std::string to_string(ControlLaw law) {
  switch (law) {
    case ControlLaw::StateFeedback: return "state_feedback";
    case ControlLaw::OutputFeedbackLocal: return "output_feedback_local";
    case ControlLaw::OutputFeedback: return "output_feedback";
  }
  return "?";
}

ControlLaw control_law_from_string(const std::string& s) {
  if (s == "state_feedback") return ControlLaw::StateFeedback;
  if (s == "output_feedback_local") return ControlLaw::OutputFeedbackLocal;
  if (s == "output_feedback") return ControlLaw::OutputFeedback;
  throw ValidationError("unknown control law '" + s + "'");
}

void check_plant(const AgentPlant& agent) {
  const int n = agent.n(), m = agent.m(), p = agent.p();
  if (n <= 0 || m <= 0 || p <= 0)
    throw ValidationError("plant: empty state, input, or output");
  if (agent.A.cols() != n || agent.B.rows() != n || agent.C.cols() != n ||
      agent.D.rows() != p || agent.D.cols() != m || agent.E_delta.rows() != n)
    throw DimensionMismatch("plant: A/B/C/D/E_delta blocks are not conformable");
  if (agent.C_m) {
    if (agent.C_m->cols() != n)
      throw DimensionMismatch("plant: C_m column count must equal n");
    if (agent.D_m && (agent.D_m->rows() != agent.C_m->rows() || agent.D_m->cols() != m))
      throw DimensionMismatch("plant: D_m must be p_i x m");
  }
  if (!agent.A.allFinite() || !agent.B.allFinite() || !agent.C.allFinite() ||
      !agent.D.allFinite() || !agent.E_delta.allFinite())
    throw ValidationError("plant: non-finite entries");
}

Matrix ExoInterface::R() const {
  Matrix R(R_r.rows(), q());
  R << R_r, Matrix::Zero(R_r.rows(), q_delta);
  return R;
}

Matrix ExoInterface::E(const AgentPlant& agent) const {
  if (agent.E_delta.cols() != q_delta)
    throw DimensionMismatch("ExoInterface: E_delta column count must equal q_delta");
  Matrix E(agent.n(), q());
  E << Matrix::Zero(agent.n(), q_r), agent.E_delta;
  return E;
}

bool assumption1_holds(const Matrix& A0) {
  if (A0.size() == 0) return true;
  return eigenvalues(A0).real().minCoeff() >= -1e-9 * (1.0 + A0.norm());
}

bool AssumptionReport::all_pass(ControlLaw law) const {
  if (!a1 || !a3) return false;
  for (const auto& ac : agents) {
    if (!ac.a4 || !ac.a5) return false;
    if (law == ControlLaw::OutputFeedbackLocal && !(ac.a7 && *ac.a7)) return false;
    if (law == ControlLaw::OutputFeedback && !(ac.a8 && *ac.a8)) return false;
  }
  return true;
}

std::string AssumptionReport::summary(ControlLaw law) const {
  std::ostringstream os;
  auto pf = [](bool b) { return b ? "pass" : "FAIL"; };
  os << "A1 (exosystem matrix spectrum): " << pf(a1) << "\n";
  os << "A3 (leader-rooted spanning tree): " << pf(a3) << "\n";
  for (size_t i = 0; i < agents.size(); ++i) {
    const auto& ac = agents[i];
    os << "agent " << (i + 1) << ": A4 " << pf(ac.a4) << ", A5 " << pf(ac.a5);
    if (ac.a7) os << ", A7 " << pf(*ac.a7);
    if (ac.a8) os << ", A8 " << pf(*ac.a8);
    if (!ac.diagnostics.empty()) os << "  (" << ac.diagnostics << ")";
    os << "\n";
  }
  os << "law " << to_string(law) << ": " << (all_pass(law) ? "all required assumptions pass" : "REQUIRED ASSUMPTION FAILED")
     << "\n";
  return os.str();
}

AssumptionReport validate(const std::vector<AgentPlant>& agents,
                          const ExoInterface& exo, const Matrix& A0,
                          const AugmentedGraph& g, ControlLaw law) {
  if (agents.empty()) throw ValidationError("validate: no agents");
  const int p = agents.front().p();
  for (const auto& a : agents) {
    check_plant(a);
    if (a.p() != p)
      throw DimensionMismatch("validate: all agents must share the output dimension p");
  }
  if (A0.rows() != exo.q() || A0.cols() != exo.q())
    throw DimensionMismatch("validate: A0 must be q x q with q = q_r + q_delta");
  if (exo.R_r.rows() != p)
    throw DimensionMismatch("validate: R_r must have p rows");

  AssumptionReport report;
  report.a1 = assumption1_holds(A0);
  report.a3 = has_spanning_tree_from_leader(g);

  // Eigenvalues of A0 with clustering: repeated roots are rank-tested once.
  std::vector<std::complex<double>> lambdas;
  if (A0.size() > 0) {
    const Eigen::VectorXcd lam = eigenvalues(A0);
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
      bool seen = false;
      for (const auto& l : lambdas)
        if (std::abs(l - lam(i)) < 1e-8) seen = true;
      if (!seen) lambdas.push_back(lam(i));
    }
  }

  for (const auto& agent : agents) {
    AssumptionReport::AgentChecks ac;
    ac.a4 = pbh_stabilizable(agent.A, agent.B);
    ac.a5 = transmission_zero_rank_ok(agent.A, agent.B, agent.C, agent.D, lambdas);
    if (law == ControlLaw::OutputFeedbackLocal) {
      if (!agent.C_m)
        throw MissingMeasurement("validate: law needs C_m but agent has none");
      ac.a7 = pbh_detectable(agent.A, *agent.C_m);
    }
    if (law == ControlLaw::OutputFeedback)
      ac.a8 = pbh_detectable(agent.A, agent.C);
    if (!ac.a4) ac.diagnostics = "uncontrollable unstable mode";
    else if (!ac.a5) ac.diagnostics = "transmission zero at an exosystem eigenvalue";
    report.agents.push_back(std::move(ac));
  }
  return report;
}

}  // namespace coopreg
