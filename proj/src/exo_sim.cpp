#include "coopreg/exo_sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <set>

#include "coopreg/errors.hpp"

namespace coopreg {

namespace {

// Cubic Hermite interpolation on [t0, t1] from endpoint values and slopes.
Vector hermite(double t, double t0, double t1, const Vector& x0, const Vector& f0,
               const Vector& x1, const Vector& f1, Vector* deriv) {
  const double h = t1 - t0;
  const double s = (t - t0) / h;
  const double s2 = s * s, s3 = s2 * s;
  const double h00 = 2 * s3 - 3 * s2 + 1;
  const double h10 = s3 - 2 * s2 + s;
  const double h01 = -2 * s3 + 3 * s2;
  const double h11 = s3 - s2;
  if (deriv) {
    const double d00 = (6 * s2 - 6 * s) / h;
    const double d10 = (3 * s2 - 4 * s + 1);
    const double d01 = (-6 * s2 + 6 * s) / h;
    const double d11 = (3 * s2 - 2 * s);
    *deriv = d00 * x0 + d10 * f0 + d01 * x1 + d11 * f1;
  }
  return h00 * x0 + h * h10 * f0 + h01 * x1 + h * h11 * f1;
}

Vector rk4_step(const std::function<Vector(double, const Vector&)>& f, double t,
                const Vector& x, double h) {
  const Vector k1 = f(t, x);
  const Vector k2 = f(t + 0.5 * h, x + 0.5 * h * k1);
  const Vector k3 = f(t + 0.5 * h, x + 0.5 * h * k2);
  const Vector k4 = f(t + h, x + h * k3);
  return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

LinearAutonomousSignal::LinearAutonomousSignal(Matrix S, Vector omega0, int q_r)
    : S_(std::move(S)), omega0_(std::move(omega0)), q_r_(q_r) {
  if (S_.rows() != S_.cols() || S_.rows() != omega0_.size())
    throw DimensionMismatch("LinearAutonomousSignal: S and omega0 must conform");
  if (q_r_ < 0 || q_r_ > omega0_.size())
    throw ValidationError("LinearAutonomousSignal: invalid reference dimension");
}

ExoEval LinearAutonomousSignal::eval(double t) const {
  ExoEval ev;
  ev.omega = expm(S_, t) * omega0_;
  ev.omega_dot = S_ * ev.omega;
  return ev;
}

CachedOdeSignal::CachedOdeSignal(Rhs rhs, Vector x0, double t_max, double h,
                                 std::vector<double> breakpoints)
    : rhs_(std::move(rhs)), h_(h), t_max_(t_max), breaks_(std::move(breakpoints)) {
  if (h <= 0 || t_max <= 0)
    throw ValidationError("CachedOdeSignal: step and horizon must be positive");
  // Integrate segment-wise so the right-limit of the RHS is used just past
  // each breakpoint.
  std::vector<double> stops;
  for (double b : breaks_)
    if (b > 0 && b < t_max) stops.push_back(b);
  std::sort(stops.begin(), stops.end());
  stops.push_back(t_max);

  double t = 0.0;
  Vector x = std::move(x0);
  grid_t_.push_back(t);
  grid_x_.push_back(x);
  grid_f_.push_back(rhs_(t, x));
  for (double stop : stops) {
    const double span = stop - t;
    const int steps = std::max(1, static_cast<int>(std::ceil(span / h - 1e-9)));
    const double hh = span / steps;
    for (int k = 0; k < steps; ++k) {
      x = rk4_step(rhs_, t, x, hh);
      t = (k + 1 == steps) ? stop : t + hh;
      grid_t_.push_back(t);
      grid_x_.push_back(x);
      // Evaluate the slope just after t so interpolation on the next step
      // uses the post-breakpoint branch.
      grid_f_.push_back(rhs_(t + 1e-12, x));
    }
  }
}

ExoEval CachedOdeSignal::eval_cached(double t, Vector* state, Vector* deriv) const {
  if (t < 0.0 || t > t_max_ + 1e-9)
    throw ValidationError("CachedOdeSignal: evaluation outside cached horizon");
  t = std::min(std::max(t, 0.0), grid_t_.back());
  auto it = std::upper_bound(grid_t_.begin(), grid_t_.end(), t);
  std::size_t k = (it == grid_t_.begin()) ? 0 : (it - grid_t_.begin() - 1);
  if (k + 1 >= grid_t_.size()) k = grid_t_.size() - 2;
  Vector d;
  const Vector v = hermite(t, grid_t_[k], grid_t_[k + 1], grid_x_[k], grid_f_[k],
                           grid_x_[k + 1], grid_f_[k + 1], &d);
  if (state) *state = v;
  if (deriv) *deriv = d;
  ExoEval ev;
  ev.omega = v;
  ev.omega_dot = d;
  return ev;
}

double Example1Signal::u0(double t) {
  if (t < 100.0) return 0.1 * t;
  if (t < 200.0)
    return 0.1 * t - 2.0 * std::sin(0.1 * t) * std::exp(-0.01 * (t - 100.0));
  return 14.0 + std::sin(0.05 * (t - 200.0));
}

Example1Signal::Example1Signal(double t_max, double h)
    : CachedOdeSignal(
          [](double t, const Vector& x) {
            Vector f(1);
            f(0) = -x(0) * x(0) * x(0) + u0(t);
            return f;
          },
          Vector::Zero(1), t_max, h, {100.0, 200.0}) {}

ExoEval Example1Signal::eval(double t) const {
  Vector r, rd;
  eval_cached(t, &r, &rd);
  ExoEval ev;
  ev.omega = Vector::Zero(4);
  ev.omega_dot = Vector::Zero(4);
  ev.omega(0) = r(0);
  ev.omega_dot(0) = rd(0);
  // delta has closed forms: delta1 = -0.002 t, delta2 = -0.2,
  // delta3 = 1 - e^{-0.05 t}.
  ev.omega(1) = -0.002 * t;
  ev.omega(2) = -0.2;
  ev.omega(3) = 1.0 - std::exp(-0.05 * t);
  ev.omega_dot(1) = -0.002;
  ev.omega_dot(2) = 0.0;
  ev.omega_dot(3) = 0.05 * std::exp(-0.05 * t);
  return ev;
}

Example2Signal::Example2Signal(double t_max, double h)
    : CachedOdeSignal(
          [](double t, const Vector& x) {
            Vector f(2);
            f(0) = 0.5 * x(1) + t * std::exp(-t) * std::sin(t);
            f(1) = -0.5 * x(0) + 2.0 * std::exp(-t);
            return f;
          },
          (Vector(2) << -1.0, 1.0).finished(), t_max, h, {}) {}

ExoEval Example2Signal::eval(double t) const {
  Vector r, rd;
  eval_cached(t, &r, &rd);
  ExoEval ev;
  ev.omega = Vector::Zero(3);
  ev.omega_dot = Vector::Zero(3);
  ev.omega.head(2) = r;
  ev.omega_dot.head(2) = rd;
  ev.omega(2) = 1.0 + 10.0 * (1.0 - std::exp(-0.1 * t));
  ev.omega_dot(2) = std::exp(-0.1 * t);
  return ev;
}

CustomTableSignal::CustomTableSignal(std::vector<double> times,
                                     std::vector<Vector> omega,
                                     std::vector<Vector> omega_dot, int q_r,
                                     std::vector<double> breakpoints)
    : times_(std::move(times)),
      omega_(std::move(omega)),
      omega_dot_(std::move(omega_dot)),
      q_r_(q_r),
      breaks_(std::move(breakpoints)) {
  if (times_.size() < 2 || times_.size() != omega_.size() ||
      times_.size() != omega_dot_.size())
    throw ValidationError("CustomTableSignal: need matching tables with at least two samples");
  for (std::size_t k = 1; k < times_.size(); ++k)
    if (times_[k] <= times_[k - 1])
      throw ValidationError("CustomTableSignal: sample times must increase strictly");
}

ExoEval CustomTableSignal::eval(double t) const {
  if (t < times_.front() - 1e-9 || t > times_.back() + 1e-9)
    throw ValidationError("CustomTableSignal: evaluation outside the table range");
  t = std::min(std::max(t, times_.front()), times_.back());
  auto it = std::upper_bound(times_.begin(), times_.end(), t);
  std::size_t k = (it == times_.begin()) ? 0 : (it - times_.begin() - 1);
  if (k + 1 >= times_.size()) k = times_.size() - 2;
  ExoEval ev;
  ev.omega = hermite(t, times_[k], times_[k + 1], omega_[k], omega_dot_[k],
                     omega_[k + 1], omega_dot_[k + 1], &ev.omega_dot);
  return ev;
}

double estimate_kappa(const ExoSignal& sig, const Matrix& A0, double t0,
                      double t1, int n_samples) {
  if (t1 <= t0) throw ValidationError("estimate_kappa: empty interval");
  if (A0.rows() != sig.q())
    throw DimensionMismatch("estimate_kappa: A0 must match the signal dimension");
  std::set<double> pts;
  for (int k = 0; k <= n_samples; ++k)
    pts.insert(t0 + (t1 - t0) * k / n_samples);
  const double eps = 1e-6 * (t1 - t0);
  for (double b : sig.breakpoints()) {
    if (b <= t0 || b >= t1) continue;
    pts.insert(b);
    pts.insert(std::max(t0, b - eps));
    pts.insert(std::min(t1, b + eps));
  }
  double sup = 0.0, sup_early = 0.0;
  const double t_cut = t0 + 0.75 * (t1 - t0);
  double tail_value = 0.0;
  for (double t : pts) {
    const ExoEval ev = sig.eval(t);
    const double v = (ev.omega_dot - A0 * ev.omega).norm();
    sup = std::max(sup, v);
    if (t <= t_cut) sup_early = std::max(sup_early, v);
    tail_value = v;
  }
  // A mismatch that keeps growing through the final quarter of the horizon
  // signals an unbounded drift: refuse to report a finite kappa for it.
  if (tail_value > 1.25 * std::max(sup_early, 1e-12) && tail_value >= 0.999 * sup)
    throw Unbounded("estimate_kappa: mismatch still growing at the horizon");
  return 1.05 * sup;
}

SimulationTrace simulate(const ClosedLoop& cl, const ExoSignal& sig,
                         const Vector& x0, double t_final, double dt) {
  if (dt <= 0 || t_final <= 0)
    throw ValidationError("simulate: step and horizon must be positive");
  if (x0.size() != cl.state_dim())
    throw DimensionMismatch("simulate: initial state size does not match the closed loop");
  if (sig.q() * cl.N != cl.B_cl.cols())
    throw DimensionMismatch("simulate: signal dimension does not match the closed loop");

  const Matrix ones_kron = kron(Matrix::Ones(cl.N, 1), Matrix::Identity(sig.q(), sig.q()));
  auto rhs = [&](double t, const Vector& x) -> Vector {
    const Vector wa = ones_kron * sig.eval(t).omega;
    return cl.A_cl * x + cl.B_cl * wa;
  };

  std::vector<double> stops;
  for (double b : sig.breakpoints())
    if (b > 0 && b < t_final) stops.push_back(b);
  std::sort(stops.begin(), stops.end());
  stops.push_back(t_final);

  std::vector<double> times;
  std::vector<Vector> states;
  double t = 0.0;
  Vector x = x0;
  times.push_back(t);
  states.push_back(x);
  for (double stop : stops) {
    const double span = stop - t;
    const int steps = std::max(1, static_cast<int>(std::ceil(span / dt - 1e-9)));
    const double h = span / steps;
    for (int k = 0; k < steps; ++k) {
      x = rk4_step(rhs, t, x, h);
      if (!x.allFinite())
        throw NonFiniteState("simulate: state became non-finite at t=" + std::to_string(t + h));
      t = (k + 1 == steps) ? stop : t + h;
      times.push_back(t);
      states.push_back(x);
    }
  }

  SimulationTrace tr;
  tr.times = times;
  tr.N = cl.N;
  tr.p = cl.p;
  const Eigen::Index M = static_cast<Eigen::Index>(times.size());
  const Eigen::Index np = static_cast<Eigen::Index>(cl.N) * cl.p;
  tr.y.resize(M, np);
  tr.y0.resize(M, np);
  tr.e.resize(M, np);
  tr.ev.resize(M, np);
  for (Eigen::Index kRow = 0; kRow < M; ++kRow) {
    const ExoEval ee = sig.eval(times[kRow]);
    const Vector wa = ones_kron * ee.omega;
    const Vector e = cl.C_cl * states[kRow] + cl.D_cl * wa;
    const Vector y0 = cl.R_a * wa;
    tr.e.row(kRow) = e.transpose();
    tr.y0.row(kRow) = y0.transpose();
    tr.y.row(kRow) = (e + y0).transpose();
    tr.ev.row(kRow) = (cl.W_e * e).transpose();
  }
  return tr;
}

BoundCheck check_ultimate_bound(const SimulationTrace& trace, double b) {
  BoundCheck bc;
  const Eigen::Index M = trace.e.rows();
  if (M == 0) {
    bc.holds = true;
    return bc;
  }
  // Bound applies to max_i ||e_i(t)||_2, the worst single agent.
  auto worst_agent = [&](Eigen::Index k) {
    double v = 0.0;
    for (int i = 0; i < trace.N; ++i)
      v = std::max(v, trace.e.row(k).segment(i * trace.p, trace.p).norm());
    return v;
  };
  Eigen::Index first_bad_after = M;  // index of last sample violating the bound
  double tail_max = 0.0;
  for (Eigen::Index k = M - 1; k >= 0; --k) {
    const double v = worst_agent(k);
    if (v > b) {
      first_bad_after = k;
      break;
    }
    tail_max = std::max(tail_max, v);
  }
  if (first_bad_after >= M) {
    bc.holds = true;
    bc.entry_time = trace.times.front();
    bc.max_tail = tail_max;
    return bc;
  }
  if (first_bad_after == M - 1) {
    bc.holds = false;
    bc.entry_time = trace.times.back();
    bc.max_tail = worst_agent(M - 1);
    return bc;
  }
  bc.holds = true;
  bc.entry_time = trace.times[first_bad_after + 1];
  bc.max_tail = tail_max;
  return bc;
}

void write_trace_csv(const SimulationTrace& trace, std::ostream& out) {
  out << "t,agent,component,y,y0,e,ev\n";
  char buf[512];
  for (std::size_t k = 0; k < trace.times.size(); ++k) {
    for (int i = 0; i < trace.N; ++i) {
      for (int j = 0; j < trace.p; ++j) {
        const Eigen::Index col = static_cast<Eigen::Index>(i) * trace.p + j;
        std::snprintf(buf, sizeof(buf), "%.9g,%d,%d,%.9g,%.9g,%.9g,%.9g\n",
                      trace.times[k], i + 1, j + 1, trace.y(k, col),
                      trace.y0(k, col), trace.e(k, col), trace.ev(k, col));
        out << buf;
      }
    }
  }
}

void write_trace_csv(const SimulationTrace& trace, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("write_trace_csv: cannot open " + path);
  write_trace_csv(trace, out);
}

}  // namespace coopreg
