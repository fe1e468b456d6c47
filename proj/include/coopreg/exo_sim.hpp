#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "coopreg/closed_loop.hpp"

namespace coopreg {

struct ExoEval {
  Vector omega;
  Vector omega_dot;
};

// Exogenous signal omega(t) = [r0(t); delta(t)] driving every agent.
class ExoSignal {
 public:
  virtual ~ExoSignal() = default;
  virtual int q_r() const = 0;
  virtual int q_delta() const = 0;
  int q() const { return q_r() + q_delta(); }
  // Times where omega_dot may jump; integrators restart there.
  virtual std::vector<double> breakpoints() const { return {}; }
  virtual ExoEval eval(double t) const = 0;
};

// omega' = S omega from a given initial condition, evaluated by matrix
// exponential so long horizons stay exact.
class LinearAutonomousSignal : public ExoSignal {
 public:
  LinearAutonomousSignal(Matrix S, Vector omega0, int q_r);
  int q_r() const override { return q_r_; }
  int q_delta() const override { return static_cast<int>(omega0_.size()) - q_r_; }
  ExoEval eval(double t) const override;

 private:
  Matrix S_;
  Vector omega0_;
  int q_r_;
};

// Nonlinear/nonautonomous signal integrated once on a fine fixed grid and
// replayed through cubic Hermite interpolation.
class CachedOdeSignal : public ExoSignal {
 public:
  using Rhs = std::function<Vector(double, const Vector&)>;
  CachedOdeSignal(Rhs rhs, Vector x0, double t_max, double h,
                  std::vector<double> breakpoints);
  ExoEval eval_cached(double t, Vector* state, Vector* deriv) const;

 protected:
  Rhs rhs_;
  double h_;
  double t_max_;
  std::vector<double> breaks_;
  std::vector<double> grid_t_;
  std::vector<Vector> grid_x_;
  std::vector<Vector> grid_f_;
};

// Reference r0' = -r0^3 + u0(t) with the three-phase ramp/sinusoid command,
// plus the closed-form three-state drift delta(t).
class Example1Signal : public CachedOdeSignal {
 public:
  explicit Example1Signal(double t_max = 420.0, double h = 1e-3);
  int q_r() const override { return 1; }
  int q_delta() const override { return 3; }
  std::vector<double> breakpoints() const override { return {100.0, 200.0}; }
  ExoEval eval(double t) const override;
  static double u0(double t);
};

// Oscillator reference with decaying forcing, plus the scalar drift
// delta(t) = 1 + 10(1 - e^{-0.1 t}).
class Example2Signal : public CachedOdeSignal {
 public:
  explicit Example2Signal(double t_max = 120.0, double h = 1e-3);
  int q_r() const override { return 2; }
  int q_delta() const override { return 1; }
  ExoEval eval(double t) const override;
};

// Signal given by sample tables (t_k, omega_k, omega_dot_k); cubic Hermite
// in between.
class CustomTableSignal : public ExoSignal {
 public:
  CustomTableSignal(std::vector<double> times, std::vector<Vector> omega,
                    std::vector<Vector> omega_dot, int q_r,
                    std::vector<double> breakpoints = {});
  int q_r() const override { return q_r_; }
  int q_delta() const override { return static_cast<int>(omega_[0].size()) - q_r_; }
  std::vector<double> breakpoints() const override { return breaks_; }
  ExoEval eval(double t) const override;

 private:
  std::vector<double> times_;
  std::vector<Vector> omega_;
  std::vector<Vector> omega_dot_;
  int q_r_;
  std::vector<double> breaks_;
};

// kappa = sup_t || omega_dot(t) - A0 omega(t) || over [t0, t1], sampled on a
// fine grid with extra points around breakpoints and a 5% safety factor.
// Throws Unbounded when the mismatch is still growing at the horizon.
double estimate_kappa(const ExoSignal& sig, const Matrix& A0, double t0,
                      double t1, int n_samples = 4000);

struct SimulationTrace {
  std::vector<double> times;
  int N = 0;
  int p = 0;
  // Row k holds the stacked per-agent vectors at times[k] (N*p columns).
  Matrix y, y0, e, ev;
};

// Fixed-step RK4 on the assembled closed loop driven by sig; steps land
// exactly on signal breakpoints and on t_final.
SimulationTrace simulate(const ClosedLoop& cl, const ExoSignal& sig,
                         const Vector& x0, double t_final, double dt);

struct BoundCheck {
  bool holds = false;
  double entry_time = 0.0;  // earliest sample time after which ||e(t)|| <= b
  double max_tail = 0.0;    // sup of ||e(t)|| from entry_time on
};

BoundCheck check_ultimate_bound(const SimulationTrace& trace, double b);

void write_trace_csv(const SimulationTrace& trace, std::ostream& out);
void write_trace_csv(const SimulationTrace& trace, const std::string& path);

}  // namespace coopreg
