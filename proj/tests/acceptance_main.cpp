// Acceptance gate: runs every release criterion and prints one PASS/FAIL line
// per criterion. Exit status is 0 only if all criteria pass. argv[1] must be
// the path to the command-line binary (used by the determinism criterion).

#include <algorithm>
#include <chrono>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "coopreg/appendix_checks.hpp"
#include "coopreg/closed_loop.hpp"
#include "coopreg/errors.hpp"
#include "coopreg/fixtures.hpp"

using namespace coopreg;

namespace {

std::mt19937 rng(20240817);

double urand(double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  return d(rng);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

AugmentedGraph random_reachable_graph() {
  const int N = 2 + static_cast<int>(rng() % 7);
  AugmentedGraph g;
  g.adjacency = Matrix::Zero(N, N);
  g.leader_gains = Vector::Zero(N);
  std::vector<int> order(N);
  for (int i = 0; i < N; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  g.leader_gains(order[0]) = urand(0.1, 3.0);
  for (int i = 1; i < N; ++i)
    g.adjacency(order[i], order[i - 1]) = urand(0.1, 3.0);
  for (int extra = 0; extra < N; ++extra) {
    const int i = static_cast<int>(rng() % N);
    const int j = static_cast<int>(rng() % N);
    if (i != j && rng() % 2) g.adjacency(i, j) = urand(0.1, 3.0);
  }
  return g;
}

ClosedLoop assemble_scenario(const Scenario& sc) {
  const int p = sc.agents.front().p();
  std::vector<PCopyInternalModel> ims;
  for (int i = 0; i < sc.N(); ++i) ims.push_back(build_pcopy(sc.A0, p));
  const GraphMatrices gm = graph_matrices(sc.graph, p);
  std::vector<ObserverGains> obs =
      sc.observers ? *sc.observers : std::vector<ObserverGains>(sc.N());
  return assemble(sc.law, sc.agents, ims, *sc.gains, obs, gm, sc.exo, sc.A0);
}

double max_agent_error(const SimulationTrace& tr, Eigen::Index row) {
  double worst = 0.0;
  for (int i = 0; i < tr.N; ++i)
    worst = std::max(worst,
                     tr.e.row(row).segment(i * tr.p, tr.p).norm());
  return worst;
}

// --- individual criteria ---------------------------------------------------

bool criterion_graph_lemmas() {
  const auto t0 = std::chrono::steady_clock::now();
  for (int it = 0; it < 1000; ++it) {
    const AugmentedGraph g = random_reachable_graph();
    if (!has_spanning_tree_from_leader(g)) return false;
    const GraphMatrices gm = graph_matrices(g, 1);
    if (gm.rho_FA >= 1.0) return false;
    const Eigen::VectorXcd lam = eigenvalues(gm.IminusFA);
    for (Eigen::Index i = 0; i < lam.size(); ++i)
      if (lam(i).real() <= 1e-9) return false;
    if (!check_lemma1(gm)) return false;
  }
  return seconds_since(t0) < 10.0;
}

bool criterion_spectral_radius_product() {
  for (int it = 0; it < 1000; ++it) {
    const int n = 1 + static_cast<int>(rng() % 8);
    Matrix L = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) L(i, i) = urand(0.0, 2.0);
    Matrix Q(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) Q(r, c) = urand(0.0, 2.0);
    if (spectral_radius(L * Q) >
        spectral_radius(L) * spectral_radius(Q) + 1e-10)
      return false;
  }
  return true;
}

bool criterion_sylvester_oracle() {
  for (int it = 0; it < 200; ++it) {
    const int n = 1 + static_cast<int>(rng() % 8);
    const int m = 1 + static_cast<int>(rng() % 8);
    Matrix A(n, n), S(m, m), B(n, m);
    for (;;) {
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) A(r, c) = urand(-1, 1);
      for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c) S(r, c) = urand(-1, 1);
      // Separated spectra so both solvers are well posed.
      A -= 2.0 * Matrix::Identity(n, n);
      S += 2.0 * Matrix::Identity(m, m);
      break;
    }
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < m; ++c) B(r, c) = urand(-1, 1);
    // X S = A X + B  <=>  (I (x) A - S^T (x) I) vec(X) = -vec(B).
    const Matrix K = kron(Matrix::Identity(m, m), A) -
                     kron(S.transpose(), Matrix::Identity(n, n));
    const Vector vecB = Eigen::Map<const Vector>(B.data(), n * m);
    const Vector vecX = K.fullPivLu().solve(-vecB);
    const Matrix X_kron = Eigen::Map<const Matrix>(vecX.data(), n, m);
    const Matrix X = sylvester_solve(A, S, B);
    if ((X - X_kron).norm() > 1e-10 * (1.0 + X_kron.norm())) return false;
  }
  return true;
}

bool criterion_hinf_oracle() {
  for (int it = 0; it < 100; ++it) {
    const int n = 2 + static_cast<int>(rng() % 4);
    Matrix A(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) A(r, c) = urand(-1, 1);
    A -= (0.5 + spectral_radius(A)) * Matrix::Identity(n, n);
    Matrix B(n, 1), C(1, n), D(1, 1);
    for (int r = 0; r < n; ++r) B(r, 0) = urand(-1, 1);
    for (int c = 0; c < n; ++c) C(0, c) = urand(-1, 1);
    D(0, 0) = urand(-0.5, 0.5);
    const double g = hinf_norm(A, B, C, D);
    double sweep = 0.0;
    for (int k = 0; k < 100000; ++k) {
      // Logarithmic grid over [1e-4, 1e4] plus the zero frequency.
      const double w =
          (k == 0) ? 0.0 : std::pow(10.0, -4.0 + 8.0 * (k - 1) / 99998.0);
      const std::complex<double> jw(0.0, w);
      const Eigen::MatrixXcd G =
          C.cast<std::complex<double>>() *
              (jw * Eigen::MatrixXcd::Identity(n, n) -
               A.cast<std::complex<double>>())
                  .fullPivLu()
                  .solve(B.cast<std::complex<double>>()) +
          D.cast<std::complex<double>>();
      sweep = std::max(sweep, std::abs(G(0, 0)));
    }
    if (std::abs(g - sweep) > 1e-4 * sweep) return false;
  }
  return true;
}

bool criterion_regulator_first_benchmark() {
  const Scenario sc = example1_scenario();
  const ClosedLoop cl = assemble_scenario(sc);
  if (!is_hurwitz(cl.A_cl)) return false;
  const RegulatorSolution sol = solve_regulator(cl);
  return sol.residual_sylvester <= 1e-8 &&
         sol.residual_regulation <= 1e-8 * (1.0 + cl.D_cl.norm());
}

bool criterion_first_benchmark_reproduction() {
  const auto t0 = std::chrono::steady_clock::now();
  const Scenario sc = example1_scenario();
  const GraphMatrices gm = graph_matrices(sc.graph, 1);
  for (int i = 0; i < sc.N(); ++i) {
    const PCopyInternalModel im = build_pcopy(sc.A0, 1);
    const LocalLoop loop = local_loop(sc.agents[i], im, (*sc.gains)[i]);
    if (!is_hurwitz(loop.A_f)) return false;
    const LocalConditionResult cond =
        check_local_condition(loop, gm.rho_FA, ControlLaw::StateFeedback);
    if (cond.margin <= 0.0) return false;
  }
  const ClosedLoop cl = assemble_scenario(sc);
  const RegulatorSolution sol = solve_regulator(cl);
  const auto sig = make_signal(sc, 300.0);
  const double kappa = estimate_kappa(*sig, sc.A0, 0.0, 300.0);
  const UltimateBound ub = ultimate_bound(cl, sol, kappa, sc.epsilon);
  const SimulationTrace tr =
      simulate(cl, *sig, initial_state(sc, cl), 300.0, 1e-3);
  const BoundCheck bc = check_ultimate_bound(tr, ub.b);
  if (!bc.holds) return false;
  return seconds_since(t0) < 60.0;
}

bool criterion_second_benchmark_reproduction() {
  const auto t0 = std::chrono::steady_clock::now();
  const Scenario sc = example2_scenario();
  const GraphMatrices gm = graph_matrices(sc.graph, 1);
  for (int i = 0; i < sc.N(); ++i) {
    const PCopyInternalModel im = build_pcopy(sc.A0, 1);
    const LocalLoop loop =
        local_loop(sc.agents[i], im, (*sc.gains)[i], (*sc.observers)[i]);
    if (!loop.A_F || !loop.A_L) return false;
    if (!is_hurwitz(*loop.A_F)) return false;
    if (!eig_multiset_equal(*loop.A_F, loop.A_f, *loop.A_L, 1e-7))
      return false;
    const LocalConditionResult cond =
        check_local_condition(loop, gm.rho_FA, ControlLaw::OutputFeedback);
    if (cond.margin <= 0.0) return false;
  }
  const ClosedLoop cl = assemble_scenario(sc);
  if (!is_hurwitz(cl.A_cl)) return false;
  const auto sig = make_signal(sc, 300.0);
  const SimulationTrace tr =
      simulate(cl, *sig, initial_state(sc, cl), 300.0, 1e-3);
  if (max_agent_error(tr, tr.e.rows() - 1) > 1e-3) return false;
  return seconds_since(t0) < 60.0;
}

bool criterion_observer_spectral_identity() {
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix A0 = Matrix::Zero(1, 1);
    ExoInterface exo;
    exo.R_r = Matrix::Ones(1, 1);
    exo.q_r = 1;
    exo.q_delta = 0;

    AugmentedGraph g;
    g.adjacency = Matrix::Zero(3, 3);
    g.adjacency(1, 0) = urand(0.5, 2.0);
    g.adjacency(2, 1) = urand(0.5, 2.0);
    if (rng() % 2) g.adjacency(0, 2) = urand(0.5, 2.0);
    g.leader_gains = Vector::Zero(3);
    g.leader_gains(0) = 1;
    const GraphMatrices gm = graph_matrices(g, 1);

    std::vector<AgentPlant> agents;
    std::vector<PCopyInternalModel> ims;
    std::vector<StateFeedbackGains> gains;
    std::vector<ObserverGains> observers;
    std::vector<Matrix> ah_blocks;
    for (int i = 0; i < 3; ++i) {
      for (;;) {
        const int n = 2 + static_cast<int>(rng() % 2);
        AgentPlant ag;
        ag.A = Matrix(n, n);
        for (int r = 0; r < n; ++r)
          for (int c = 0; c < n; ++c) ag.A(r, c) = urand(-1, 1);
        ag.B = Matrix(n, 1);
        for (int r = 0; r < n; ++r) ag.B(r, 0) = urand(-1, 1);
        ag.C = Matrix(1, n);
        for (int c = 0; c < n; ++c) ag.C(0, c) = urand(-1, 1);
        ag.D = Matrix::Zero(1, 1);
        ag.E_delta = Matrix::Zero(n, 0);
        ag.C_m = Matrix::Identity(n, n);
        const PCopyInternalModel im = build_pcopy(A0, 1);
        const auto [Ab, Bb] = augmented_pair(ag, im);
        if (!pbh_stabilizable(Ab, Bb)) continue;
        agents.push_back(ag);
        ims.push_back(im);
        gains.push_back(synthesize_state_feedback(ag, im));
        ObserverGains og =
            synthesize_observer(ag, ObserverKind::LocalMeasurement);
        ah_blocks.push_back(ag.A - *og.H * *ag.C_m);
        observers.push_back(std::move(og));
        break;
      }
    }
    Eigen::Index dim = 0;
    for (const auto& b : ah_blocks) dim += b.rows();
    Matrix A_H = Matrix::Zero(dim, dim);
    Eigen::Index off = 0;
    for (const auto& b : ah_blocks) {
      A_H.block(off, off, b.rows(), b.rows()) = b;
      off += b.rows();
    }
    const ClosedLoop eta = assemble(ControlLaw::OutputFeedbackLocal, agents,
                                    ims, gains, observers, gm, exo, A0);
    const ClosedLoop gl = assemble(ControlLaw::StateFeedback, agents, ims,
                                   gains, observers, gm, exo, A0);
    if (!verify_theorem3_similarity(eta, gl, A_H, 1e-7)) return false;
  }
  return true;
}

bool criterion_counterexample_suite() {
  const auto t0 = std::chrono::steady_clock::now();
  for (const CounterexampleReport& r : run_all_counterexamples())
    if (!r.pass) return false;
  return seconds_since(t0) < 5.0;
}

bool criterion_direct_inverse_identity() {
  const Scenario sc = example1_scenario();
  const ClosedLoop cl = assemble_scenario(sc);
  const RegulatorSolution sol = solve_regulator(cl);
  const Matrix direct = -cl.A_cl.fullPivLu().solve(cl.B_cl);
  return (sol.X - direct).norm() <= 1e-10 * (1.0 + direct.norm());
}

bool criterion_integration_fidelity() {
  Scenario sc = example1_scenario();
  sc.exo_kind = "linear";
  Matrix S = Matrix::Zero(4, 4);
  S(1, 2) = 0.01;
  S(3, 3) = -0.05;
  sc.exo_S = S;
  sc.exo_omega0 = (Vector(4) << 0.5, 0.0, -0.2, 1.0).finished();
  const ClosedLoop cl = assemble_scenario(sc);
  const auto sig = make_signal(sc, 12.0);
  const SimulationTrace tr =
      simulate(cl, *sig, initial_state(sc, cl), 10.0, 1e-3);

  const Eigen::Index nx = cl.state_dim();
  const Matrix ones = kron(Matrix::Ones(cl.N, 1), Matrix::Identity(4, 4));
  Matrix Acas = Matrix::Zero(nx + 4, nx + 4);
  Acas.topLeftCorner(nx, nx) = cl.A_cl;
  Acas.topRightCorner(nx, 4) = cl.B_cl * ones;
  Acas.bottomRightCorner(4, 4) = S;
  Vector z0(nx + 4);
  z0.head(nx) = initial_state(sc, cl);
  z0.tail(4) = *sc.exo_omega0;

  double max_err = 0.0, scale = 0.0;
  for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(tr.times.size());
       k += 100) {
    const Vector z = expm(Acas, tr.times[k]) * z0;
    const Vector e_exact = cl.C_cl * z.head(nx) + cl.D_cl * (ones * z.tail(4));
    max_err = std::max(
        max_err, (tr.e.row(k).transpose() - e_exact).cwiseAbs().maxCoeff());
    scale = std::max(scale, e_exact.cwiseAbs().maxCoeff());
  }
  return max_err <= 1e-6 * scale;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool criterion_determinism(const std::string& cli) {
  const std::string d1 = "acceptance_run_a";
  const std::string d2 = "acceptance_run_b";
  for (const std::string& d : {d1, d2}) {
    const std::string cmd =
        "\"" + cli + "\" repro example1 --out " + d + " > /dev/null";
    if (std::system(cmd.c_str()) != 0) return false;
  }
  const std::string a = read_file(d1 + "/example1_trace.csv");
  const std::string b = read_file(d2 + "/example1_trace.csv");
  return !a.empty() && a == b;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s <path-to-cli-binary>\n", argv[0]);
    return 2;
  }
  const std::string cli = argv[1];

  bool all = true;
  auto report = [&](const char* name, bool ok) {
    std::printf("%-60s %s\n", name, ok ? "PASS" : "FAIL");
    std::fflush(stdout);
    all = all && ok;
  };
  auto guard = [&](const char* name, auto&& fn) {
    bool ok = false;
    try {
      ok = fn();
    } catch (const std::exception& ex) {
      std::fprintf(stderr, "%s raised: %s\n", name, ex.what());
      ok = false;
    }
    report(name, ok);
  };

  guard("01 graph spectra on 1000 random leader-rooted graphs",
        criterion_graph_lemmas);
  guard("02 spectral-radius product bound on 1000 random pairs",
        criterion_spectral_radius_product);
  guard("03 Sylvester solver vs Kronecker oracle (200 instances)",
        criterion_sylvester_oracle);
  guard("04 H-infinity bisection vs frequency sweep (100 systems)",
        criterion_hinf_oracle);
  guard("05 regulator equations on the first benchmark",
        criterion_regulator_first_benchmark);
  guard("06 first benchmark: margins and ultimate bound at t=300",
        criterion_first_benchmark_reproduction);
  guard("07 second benchmark: observer loop convergence at t=300",
        criterion_second_benchmark_reproduction);
  guard("08 observer-loop spectral identity on 20 random fixtures",
        criterion_observer_spectral_identity);
  guard("09 counterexample suite", criterion_counterexample_suite);
  guard("10 zero-dynamics regulator closed form",
        criterion_direct_inverse_identity);
  guard("11 integrator fidelity vs matrix exponential",
        criterion_integration_fidelity);
  guard("12 byte-identical traces across repeated runs",
        [&] { return criterion_determinism(cli); });

  return all ? 0 : 1;
}
