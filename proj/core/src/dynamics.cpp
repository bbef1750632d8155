#include "fmlab/dynamics.hpp"

#include <cmath>
#include <random>

namespace fmlab {

namespace {

// Allocation-free linear interpolation of u at time t.
void interpolate_into(const SampledSignal& u, double t, Vector& out) {
  const TimeGrid& g = u.grid();
  if (t <= g.t0) {
    out = u[0];
    return;
  }
  const double pos = (t - g.t0) / g.dt;
  const auto lo = static_cast<std::size_t>(pos);
  if (lo >= u.size() - 1) {
    out = u[u.size() - 1];
    return;
  }
  const double frac = pos - static_cast<double>(lo);
  out = u[lo];
  out += frac * (u[lo + 1] - u[lo]);
}

}  // namespace

Trajectory integrate(const SystemModel& model, const Vector& x0, const SampledSignal& u,
                     std::size_t substeps) {
  if (substeps < 1) throw ConfigError("integrate needs at least one substep");
  if (x0.size() != model.state_dim) throw ShapeError("x0 dimension does not match the model");
  if (u.dimension() != model.input_dim)
    throw ShapeError("input dimension does not match the model");

  const TimeGrid& grid = u.grid();
  std::vector<Vector> states;
  states.reserve(grid.n);
  states.push_back(x0);

  const double h = grid.dt / static_cast<double>(substeps);
  Vector x = x0;
  Vector k1(model.state_dim), k2(model.state_dim), k3(model.state_dim), k4(model.state_dim);
  Vector xs(model.state_dim);
  Vector u0(model.input_dim), um(model.input_dim), u1(model.input_dim);

  for (std::size_t k = 0; k + 1 < grid.n; ++k) {
    for (std::size_t s = 0; s < substeps; ++s) {
      const double t = grid.time(k) + static_cast<double>(s) * h;
      interpolate_into(u, t, u0);
      interpolate_into(u, t + 0.5 * h, um);
      interpolate_into(u, t + h, u1);

      model.dynamics(t, x, u0, k1);
      xs = x + (0.5 * h) * k1;
      model.dynamics(t + 0.5 * h, xs, um, k2);
      xs = x + (0.5 * h) * k2;
      model.dynamics(t + 0.5 * h, xs, um, k3);
      xs = x + h * k3;
      model.dynamics(t + h, xs, u1, k4);

      x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      if (!x.allFinite())
        throw DivergenceError("trajectory diverged", t + h);
    }
    states.push_back(x);
  }

  std::vector<Vector> outputs;
  outputs.reserve(grid.n);
  Vector y(model.output_dim);
  for (std::size_t k = 0; k < grid.n; ++k) {
    model.readout(states[k], u[k], y);
    outputs.push_back(y);
  }
  return Trajectory{grid, std::move(states), SampledSignal(grid, std::move(outputs))};
}

SystemModel lowpass_model(double tau) {
  if (!(tau > 0.0)) throw ConfigError("low-pass time constant must be positive");
  SystemModel m;
  m.state_dim = 1;
  m.input_dim = 1;
  m.output_dim = 1;
  m.label = "lowpass";
  m.dynamics = [tau](double, const Vector& x, const Vector& u, Vector& dx) {
    dx[0] = (-x[0] + u[0]) / tau;
  };
  m.readout = [](const Vector& x, const Vector&, Vector& y) { y[0] = x[0]; };
  return m;
}

SampledSignal convolution_oracle(double tau, const SampledSignal& u, double x0) {
  if (!(tau > 0.0)) throw ConfigError("low-pass time constant must be positive");
  if (u.dimension() != 1) throw ShapeError("convolution oracle expects a scalar input");
  const TimeGrid& grid = u.grid();
  const std::size_t n = grid.n;

  // decay[m] = exp(-m*dt/tau)
  std::vector<double> decay(n);
  for (std::size_t m = 0; m < n; ++m)
    decay[m] = std::exp(-static_cast<double>(m) * grid.dt / tau);

  std::vector<Vector> values(n, Vector::Zero(1));
  for (std::size_t k = 0; k < n; ++k) {
    double acc = 0.0;
    if (k > 0) {
      for (std::size_t j = 0; j <= k; ++j) {
        const double w = (j == 0 || j == k) ? 0.5 : 1.0;
        acc += w * decay[k - j] * u[j][0];
      }
      acc *= grid.dt / tau;
    }
    values[k][0] = decay[k] * x0 + acc;
  }
  return SampledSignal(grid, std::move(values));
}

double MemristorParams::memristance(double x) const {
  return base_memristance + modulation_depth * std::tanh(x);
}

double MemristorParams::lipschitz_memristance() const { return std::abs(modulation_depth); }

double MemristorParams::max_memristance() const {
  return base_memristance + std::abs(modulation_depth);
}

void MemristorParams::validate() const {
  if (!(relaxation_rate > 0.0)) throw ConfigError("memristor relaxation rate must be positive");
  if (!(drive_saturation > 0.0)) throw ConfigError("memristor drive saturation must be positive");
  if (!(base_memristance > 0.0)) throw ConfigError("memristor base memristance must be positive");
  if (!(std::abs(modulation_depth) < base_memristance))
    throw ConfigError("memristor modulation depth must satisfy |r_m| < R0");
}

SystemModel memristor_model(const MemristorParams& params, MemristorOutput output) {
  params.validate();
  SystemModel m;
  m.state_dim = 1;
  m.input_dim = 1;
  m.output_dim = 1;
  m.label = "memristor";
  const double a = params.relaxation_rate;
  const double s = params.drive_saturation;
  m.dynamics = [a, s](double, const Vector& x, const Vector& u, Vector& dx) {
    dx[0] = -a * x[0] + s * std::tanh(u[0] / s);
  };
  if (output == MemristorOutput::Voltage) {
    const MemristorParams p = params;
    m.readout = [p](const Vector& x, const Vector& u, Vector& y) {
      y[0] = p.memristance(x[0]) * u[0];
    };
  } else {
    m.readout = [](const Vector& x, const Vector&, Vector& y) { y[0] = x[0]; };
  }
  return m;
}

SystemModel counterexample_a1_model() {
  SystemModel m;
  m.state_dim = 2;  // (z, x)
  m.input_dim = 1;
  m.output_dim = 1;
  m.label = "cex-a1";
  m.time_varying = true;
  m.integrator_gate_end = 1.0;
  m.dynamics = [](double t, const Vector& x, const Vector& u, Vector& dx) {
    dx[0] = (t <= 1.0) ? u[0] : 0.0;
    dx[1] = -x[1] + x[0];
  };
  m.readout = [](const Vector& x, const Vector&, Vector& y) { y[0] = x[1]; };
  return m;
}

SystemModel counterexample_a2_model() {
  SystemModel m;
  m.state_dim = 1;
  m.input_dim = 1;
  m.output_dim = 1;
  m.label = "cex-a2";
  m.time_varying = true;
  m.dynamics = [](double t, const Vector& x, const Vector& u, Vector& dx) {
    dx[0] = (-x[0] + u[0]) / (t + 1.0);
  };
  m.readout = [](const Vector& x, const Vector&, Vector& y) { y[0] = x[0]; };
  return m;
}

SystemModel counterexample_a3_model() {
  SystemModel m;
  m.state_dim = 2;  // (x1, x2)
  m.input_dim = 1;
  m.output_dim = 1;
  m.label = "cex-a3";
  m.dynamics = [](double, const Vector& x, const Vector& u, Vector& dx) {
    dx[0] = -x[0] * x[0];
    dx[1] = x[0] * (-x[1] + u[0]);
  };
  m.readout = [](const Vector& x, const Vector&, Vector& y) { y[0] = x[1]; };
  return m;
}

SystemModel unstable_model() {
  SystemModel m;
  m.state_dim = 1;
  m.input_dim = 1;
  m.output_dim = 1;
  m.label = "unstable";
  m.dynamics = [](double, const Vector& x, const Vector&, Vector& dx) { dx[0] = x[0]; };
  m.readout = [](const Vector& x, const Vector&, Vector& y) { y[0] = x[0]; };
  return m;
}

LyapunovReport lyapunov_sample_check(const SystemModel& model, const LyapunovCheckSpec& spec) {
  if (model.time_varying)
    throw ConfigError("lyapunov_sample_check applies to time-invariant models only");
  if (spec.x_box.size() != static_cast<std::size_t>(model.state_dim) ||
      spec.u_box.size() != static_cast<std::size_t>(model.input_dim))
    throw ShapeError("lyapunov sample boxes do not match the model dimensions");
  if (spec.samples < 1) throw ConfigError("lyapunov check needs at least one sample");
  for (const auto& [lo, hi] : spec.x_box)
    if (!(std::isfinite(lo) && std::isfinite(hi) && lo <= hi))
      throw ConfigError("lyapunov x box must be finite");
  for (const auto& [lo, hi] : spec.u_box)
    if (!(std::isfinite(lo) && std::isfinite(hi) && lo <= hi))
      throw ConfigError("lyapunov u box must be finite");

  constexpr std::size_t kWitnessCap = 64;
  std::mt19937_64 rng(mix_seed(spec.seed));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto draw = [&](const std::vector<std::pair<double, double>>& box, Vector& out) {
    for (std::size_t i = 0; i < box.size(); ++i)
      out[static_cast<Eigen::Index>(i)] = box[i].first + unit(rng) * (box[i].second - box[i].first);
  };

  LyapunovReport report;
  report.samples = spec.samples;
  Vector xa(model.state_dim), xb(model.state_dim);
  Vector ua(model.input_dim), ub(model.input_dim);
  Vector fa(model.state_dim), fb(model.state_dim);

  for (std::size_t i = 0; i < spec.samples; ++i) {
    draw(spec.x_box, xa);
    draw(spec.x_box, xb);
    draw(spec.u_box, ua);
    draw(spec.u_box, ub);
    const double dx_norm = (xa - xb).norm();
    const double du_norm = (ua - ub).norm();
    if (spec.kappa(dx_norm) < du_norm) continue;
    ++report.premise_hits;

    // Lie derivative of V = |xa - xb|^2 along the paired dynamics.
    model.dynamics(0.0, xa, ua, fa);
    model.dynamics(0.0, xb, ub, fb);
    const double vdot = 2.0 * (xa - xb).dot(fa - fb);
    const double rho_value = spec.rho(dx_norm);
    if (vdot > -rho_value + spec.slack) {
      ++report.violation_count;
      if (report.violations.size() < kWitnessCap)
        report.violations.push_back(LyapunovViolation{i, xa, xb, ua, ub, vdot, rho_value});
    }
  }
  return report;
}

}  // namespace fmlab
