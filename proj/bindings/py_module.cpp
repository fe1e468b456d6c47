#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "coopreg/appendix_checks.hpp"
#include "coopreg/closed_loop.hpp"
#include "coopreg/errors.hpp"
#include "coopreg/fixtures.hpp"
#include "coopreg/scenario.hpp"

namespace py = pybind11;
using namespace coopreg;

namespace {

Scenario named_scenario(const std::string& name) {
  if (name == "example1") return example1_scenario();
  if (name == "example2") return example2_scenario();
  throw ValidationError("unknown bundled scenario '" + name + "'");
}

// Run the full check/assemble/bound/simulate pipeline on a bundled scenario
// and return the headline numbers.
py::dict run_benchmark(const std::string& name, double t_final, double dt) {
  Scenario sc = named_scenario(name);
  sc.t_final = t_final;
  sc.dt = dt;
  check_scenario(sc);
  const int p = sc.agents.front().p();
  std::vector<PCopyInternalModel> ims;
  for (int i = 0; i < sc.N(); ++i) ims.push_back(build_pcopy(sc.A0, p));
  const GraphMatrices gm = graph_matrices(sc.graph, p);
  std::vector<ObserverGains> obs =
      sc.observers ? *sc.observers : std::vector<ObserverGains>(sc.N());
  const ClosedLoop cl =
      assemble(sc.law, sc.agents, ims, *sc.gains, obs, gm, sc.exo, sc.A0);
  const RegulatorSolution sol = solve_regulator(cl);
  const auto sig = make_signal(sc, sc.t_final);
  const double kappa = estimate_kappa(*sig, sc.A0, 0.0, sc.t_final);
  const UltimateBound ub = ultimate_bound(cl, sol, kappa, sc.epsilon);
  const SimulationTrace tr =
      simulate(cl, *sig, initial_state(sc, cl), sc.t_final, sc.dt);
  const BoundCheck bc = check_ultimate_bound(tr, ub.b);

  py::dict out;
  out["law"] = to_string(sc.law);
  out["closed_loop_hurwitz"] = is_hurwitz(cl.A_cl);
  out["regulator_residual"] = sol.residual_sylvester;
  out["regulation_residual"] = sol.residual_regulation;
  out["kappa"] = kappa;
  out["ultimate_bound"] = ub.b;
  out["bound_holds"] = bc.holds;
  out["bound_entry_time"] = bc.entry_time;
  out["final_error"] = tr.e.row(tr.e.rows() - 1).norm();
  return out;
}

py::list counterexample_reports() {
  py::list out;
  for (const auto& rep : run_all_counterexamples()) {
    py::dict d;
    d["name"] = rep.name;
    d["pass"] = rep.pass;
    py::list claims;
    for (const auto& c : rep.claims) {
      py::dict dc;
      dc["description"] = c.description;
      dc["expected"] = c.expected;
      dc["computed"] = c.computed;
      claims.append(dc);
    }
    d["claims"] = claims;
    out.append(d);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_coopreg, m) {
  m.doc() = "Distributed output-regulation toolkit";

  py::register_exception<Error>(m, "CoopregError", PyExc_RuntimeError);

  m.def("sylvester_solve", &sylvester_solve, py::arg("A"), py::arg("B"),
        py::arg("C"), "Solve X B = A X + C");
  m.def("care_solve", &care_solve, py::arg("A"), py::arg("B"), py::arg("Q"),
        py::arg("R"), "Stabilizing solution of the continuous Riccati equation");
  m.def("hinf_norm", &hinf_norm, py::arg("A"), py::arg("B"), py::arg("C"),
        py::arg("D"), py::arg("rel_tol") = 1e-6);
  m.def("spectral_radius", &spectral_radius);
  m.def(
      "is_hurwitz", [](const Matrix& M) { return is_hurwitz(M); }, py::arg("M"));
  m.def("minimal_polynomial", &minimal_polynomial, py::arg("A"),
        "Ascending monic coefficients of the minimal polynomial");
  m.def("expm", &expm, py::arg("A"), py::arg("t") = 1.0);

  m.def("run_benchmark", &run_benchmark, py::arg("name"),
        py::arg("t_final") = 50.0, py::arg("dt") = 1e-3,
        "Full pipeline on a bundled scenario (example1 or example2)");
  m.def("counterexample_reports", &counterexample_reports,
        "The three counterexample regression reports");
  m.def("scenario_json", [](const std::string& name) {
    return scenario_to_json(named_scenario(name));
  });
}
