#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "coopreg/appendix_checks.hpp"
#include "coopreg/closed_loop.hpp"
#include "coopreg/errors.hpp"
#include "coopreg/fixtures.hpp"
#include "coopreg/scenario.hpp"
#include "json.hpp"

namespace {

using namespace coopreg;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitParse = 4;

struct Options {
  std::string scenario_path;
  std::string out = ".";
  std::optional<std::string> law;
  std::optional<double> t_final;
  std::optional<double> dt;
  bool json_output = false;
};

Scenario load_or_fixture(const std::string& path_or_name) {
  if (path_or_name == "example1") return example1_scenario();
  if (path_or_name == "example2") return example2_scenario();
  return load_scenario(path_or_name);
}

void apply_overrides(Scenario& sc, const Options& opt) {
  if (opt.law) sc.law = control_law_from_string(*opt.law);
  if (opt.t_final) sc.t_final = *opt.t_final;
  if (opt.dt) sc.dt = *opt.dt;
}

// Fill in any missing gains/observers by LQR synthesis and return the
// per-agent internal models alongside.
std::vector<PCopyInternalModel> ensure_gains(Scenario& sc) {
  const int p = sc.agents.front().p();
  std::vector<PCopyInternalModel> ims;
  for (int i = 0; i < sc.N(); ++i) ims.push_back(build_pcopy(sc.A0, p));
  if (!sc.gains) {
    std::vector<StateFeedbackGains> gains;
    for (int i = 0; i < sc.N(); ++i)
      gains.push_back(synthesize_state_feedback(sc.agents[i], ims[i]));
    sc.gains = std::move(gains);
  }
  if (sc.law != ControlLaw::StateFeedback && !sc.observers) {
    const ObserverKind kind = sc.law == ControlLaw::OutputFeedbackLocal
                                  ? ObserverKind::LocalMeasurement
                                  : ObserverKind::Distributed;
    std::vector<ObserverGains> observers;
    for (int i = 0; i < sc.N(); ++i)
      observers.push_back(synthesize_observer(sc.agents[i], kind));
    sc.observers = std::move(observers);
  }
  return ims;
}

json assumption_report_json(const AssumptionReport& rep, ControlLaw law) {
  json j;
  j["a1_exosystem_spectrum"] = rep.a1;
  j["a3_spanning_tree"] = rep.a3;
  j["agents"] = json::array();
  for (const auto& a : rep.agents) {
    json ja;
    ja["a4_stabilizable"] = a.a4;
    ja["a5_transmission_zeros"] = a.a5;
    if (a.a7) ja["a7_detectable_measurement"] = *a.a7;
    if (a.a8) ja["a8_detectable_output"] = *a.a8;
    if (!a.diagnostics.empty()) ja["diagnostics"] = a.diagnostics;
    j["agents"].push_back(ja);
  }
  j["all_pass"] = rep.all_pass(law);
  return j;
}

int cmd_check(const Options& opt) {
  Scenario sc = load_or_fixture(opt.scenario_path);
  apply_overrides(sc, opt);
  check_scenario(sc);
  const AssumptionReport rep =
      validate(sc.agents, sc.exo, sc.A0, sc.graph, sc.law);
  if (opt.json_output)
    std::cout << assumption_report_json(rep, sc.law).dump(2) << "\n";
  else
    std::cout << rep.summary(sc.law);
  return rep.all_pass(sc.law) ? kExitOk : kExitValidation;
}

int cmd_synthesize(const Options& opt) {
  Scenario sc = load_or_fixture(opt.scenario_path);
  apply_overrides(sc, opt);
  check_scenario(sc);
  const auto ims = ensure_gains(sc);
  const GraphMatrices gm = graph_matrices(sc.graph, sc.agents.front().p());
  json j;
  j["agents"] = json::array();
  bool all_ok = true;
  for (int i = 0; i < sc.N(); ++i) {
    std::optional<ObserverGains> obs;
    if (sc.observers) obs = (*sc.observers)[i];
    const LocalLoop loop = local_loop(sc.agents[i], ims[i], (*sc.gains)[i], obs);
    const LocalConditionResult cond = check_local_condition(loop, gm.rho_FA, sc.law);
    json ja;
    ja["local_hurwitz"] = is_hurwitz(sc.law == ControlLaw::OutputFeedback && loop.A_F
                                         ? *loop.A_F
                                         : loop.A_f);
    ja["hinf"] = cond.hinf;
    ja["margin"] = cond.margin;
    ja["condition_pass"] = cond.pass;
    all_ok = all_ok && ja["local_hurwitz"].get<bool>() && cond.pass;
    j["agents"].push_back(ja);
    if (!opt.json_output)
      std::printf("agent %d: local loop %s, ||g||inf=%.6g, margin=%.6g (%s)\n",
                  i + 1, ja["local_hurwitz"].get<bool>() ? "Hurwitz" : "NOT Hurwitz",
                  cond.hinf, cond.margin, cond.pass ? "pass" : "fail");
  }
  save_scenario(sc, opt.out);
  if (opt.json_output) std::cout << j.dump(2) << "\n";
  else std::printf("wrote %s\n", opt.out.c_str());
  return all_ok ? kExitOk : kExitValidation;
}

int run_simulation(const Options& opt, const std::string& stem) {
  Scenario sc = load_or_fixture(opt.scenario_path);
  apply_overrides(sc, opt);
  check_scenario(sc);
  const AssumptionReport arep =
      validate(sc.agents, sc.exo, sc.A0, sc.graph, sc.law);
  if (!arep.all_pass(sc.law)) {
    std::cerr << arep.summary(sc.law);
    return kExitValidation;
  }
  const auto ims = ensure_gains(sc);
  const int p = sc.agents.front().p();
  const GraphMatrices gm = graph_matrices(sc.graph, p);
  std::vector<ObserverGains> obs =
      sc.observers ? *sc.observers : std::vector<ObserverGains>(sc.N());
  const ClosedLoop cl = assemble(sc.law, sc.agents, ims, *sc.gains, obs, gm,
                                 sc.exo, sc.A0);
  if (!is_hurwitz(cl.A_cl))
    throw NotHurwitz("closed-loop matrix is not Hurwitz; refusing to simulate");

  const RegulatorSolution sol = solve_regulator(cl);
  const auto sig = make_signal(sc, sc.t_final);
  const double kappa =
      sc.kappa ? *sc.kappa : estimate_kappa(*sig, sc.A0, 0.0, sc.t_final);
  const UltimateBound ub = ultimate_bound(cl, sol, kappa, sc.epsilon);

  const Vector x0 = initial_state(sc, cl);
  const SimulationTrace tr = simulate(cl, *sig, x0, sc.t_final, sc.dt);
  const BoundCheck bc = check_ultimate_bound(tr, ub.b);

  std::error_code ec;
  std::filesystem::create_directories(opt.out, ec);
  const std::string trace_path = opt.out + "/" + stem + "_trace.csv";
  write_trace_csv(tr, trace_path);
  // Per-agent plot data: sub-sampled t vs y_i and y0.
  const std::size_t stride =
      std::max<std::size_t>(1, tr.times.size() / 3000);
  std::vector<std::string> plot_paths;
  for (int i = 0; i < sc.N(); ++i) {
    const std::string path =
        opt.out + "/" + stem + "_agent" + std::to_string(i + 1) + ".csv";
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw ValidationError("cannot write " + path);
    std::fprintf(f, "t");
    for (int jj = 0; jj < p; ++jj) std::fprintf(f, ",y%d,y0_%d", jj + 1, jj + 1);
    std::fprintf(f, "\n");
    for (std::size_t k = 0; k < tr.times.size(); k += stride) {
      std::fprintf(f, "%.9g", tr.times[k]);
      for (int jj = 0; jj < p; ++jj)
        std::fprintf(f, ",%.9g,%.9g", tr.y(k, i * p + jj), tr.y0(k, i * p + jj));
      std::fprintf(f, "\n");
    }
    std::fclose(f);
    plot_paths.push_back(path);
  }

  double final_err = 0.0;
  for (int i = 0; i < sc.N(); ++i)
    final_err = std::max(final_err,
                         tr.e.row(tr.e.rows() - 1).segment(i * p, p).norm());

  json j;
  j["scenario"] = sc.name;
  j["law"] = to_string(sc.law);
  j["closed_loop_hurwitz"] = true;
  j["regulator_residual"] = sol.residual_sylvester;
  j["regulation_residual"] = sol.residual_regulation;
  j["kappa"] = kappa;
  j["ultimate_bound"] = {{"c", ub.c},       {"alpha", ub.alpha},
                         {"kappa", ub.kappa}, {"b_prime", ub.b_prime},
                         {"epsilon", ub.epsilon}, {"b", ub.b}};
  j["bound_holds"] = bc.holds;
  j["bound_entry_time"] = bc.entry_time;
  j["final_max_agent_error"] = final_err;
  j["trace_csv"] = trace_path;
  j["plot_csv"] = plot_paths;
  if (opt.json_output) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::printf("scenario %s under %s\n", sc.name.c_str(),
                to_string(sc.law).c_str());
    std::printf("regulator residuals: sylvester %.3e, regulation %.3e\n",
                sol.residual_sylvester, sol.residual_regulation);
    std::printf("ultimate bound b = %.6g (c=%.4g, alpha=%.4g, kappa=%.4g)\n",
                ub.b, ub.c, ub.alpha, ub.kappa);
    std::printf("bound %s from t = %.6g; final max agent error %.3e\n",
                bc.holds ? "holds" : "VIOLATED", bc.entry_time, final_err);
    std::printf("trace: %s\n", trace_path.c_str());
  }
  return bc.holds ? kExitOk : kExitNumerical;
}

int cmd_verify_counterexamples(bool json_output) {
  const auto reports = run_all_counterexamples();
  bool all = true;
  json j = json::array();
  for (const auto& rep : reports) {
    all = all && rep.pass;
    if (json_output) {
      json jr;
      jr["name"] = rep.name;
      jr["pass"] = rep.pass;
      jr["claims"] = json::array();
      for (const auto& c : rep.claims)
        jr["claims"].push_back({{"description", c.description},
                                {"expected", c.expected},
                                {"computed", c.computed}});
      j.push_back(jr);
    } else {
      std::printf("%s: %s\n", rep.pass ? "PASS" : "FAIL", rep.name.c_str());
      for (const auto& c : rep.claims)
        if (c.expected != c.computed)
          std::printf("  claim failed: %s (expected %s)\n",
                      c.description.c_str(), c.expected ? "true" : "false");
    }
  }
  if (json_output) std::cout << j.dump(2) << "\n";
  return all ? kExitOk : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributed output-regulation toolkit"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub, bool with_scenario) {
    if (with_scenario)
      sub->add_option("scenario", opt.scenario_path,
                      "scenario file, or bundled name example1/example2")
          ->required();
    sub->add_option("--law", opt.law,
                    "state_feedback | output_feedback_local | output_feedback");
    sub->add_option("--t-final", opt.t_final, "simulation horizon");
    sub->add_option("--dt", opt.dt, "integration step");
    sub->add_flag("--json", opt.json_output, "machine-readable output");
  };

  auto* c_check = app.add_subcommand("check", "validate a scenario's assumptions");
  add_common(c_check, true);
  auto* c_synth = app.add_subcommand("synthesize", "fill in gains by LQR design");
  add_common(c_synth, true);
  c_synth->add_option("--out", opt.out, "output scenario path")->required();
  auto* c_sim = app.add_subcommand("simulate", "assemble, bound, and integrate");
  add_common(c_sim, true);
  c_sim->add_option("--out", opt.out, "output directory");
  auto* c_repro = app.add_subcommand("repro", "re-run a bundled benchmark");
  add_common(c_repro, true);
  c_repro->add_option("--out", opt.out, "output directory");
  auto* c_ver = app.add_subcommand("verify-counterexamples",
                                   "run the three counterexample reports");
  c_ver->add_flag("--json", opt.json_output, "machine-readable output");

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_check->parsed()) return cmd_check(opt);
    if (c_synth->parsed()) return cmd_synthesize(opt);
    if (c_sim->parsed()) return run_simulation(opt, "trace");
    if (c_repro->parsed()) return run_simulation(opt, opt.scenario_path);
    if (c_ver->parsed()) return cmd_verify_counterexamples(opt.json_output);
  } catch (const ParseError& ex) {
    std::cerr << "parse error: " << ex.what() << "\n";
    return kExitParse;
  } catch (const ValidationError& ex) {
    std::cerr << "validation error: " << ex.what() << "\n";
    return kExitValidation;
  } catch (const DimensionMismatch& ex) {
    std::cerr << "validation error: " << ex.what() << "\n";
    return kExitValidation;
  } catch (const MissingMeasurement& ex) {
    std::cerr << "validation error: " << ex.what() << "\n";
    return kExitValidation;
  } catch (const MissingGains& ex) {
    std::cerr << "validation error: " << ex.what() << "\n";
    return kExitValidation;
  } catch (const DegenerateNode& ex) {
    std::cerr << "validation error: " << ex.what() << "\n";
    return kExitValidation;
  } catch (const Error& ex) {
    std::cerr << "numerical error: " << ex.what() << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}
