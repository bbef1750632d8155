#ifndef FMLAB_DYNAMICS_HPP
#define FMLAB_DYNAMICS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fmlab/comparison.hpp"
#include "fmlab/signals.hpp"

namespace fmlab {

/// Input-driven state-space model dx/dt = f(t, x, u), y = g(x, u).
///
/// The readout receives the instantaneous input so models with direct
/// feedthrough (the memristor voltage) fit the same interface; pure-state
/// readouts ignore the second argument.
struct SystemModel {
  Eigen::Index state_dim = 1;
  Eigen::Index input_dim = 1;
  Eigen::Index output_dim = 1;
  std::function<void(double, const Vector&, const Vector&, Vector&)> dynamics;
  std::function<void(const Vector&, const Vector&, Vector&)> readout;
  bool time_varying = false;
  /// End of the accumulated-input window for the gated-integrator
  /// augmentation (set by the input-delay counterexample).
  std::optional<double> integrator_gate_end;
  std::string label;

  Vector output(const Vector& x, const Vector& u) const {
    Vector y(output_dim);
    readout(x, u, y);
    return y;
  }
};

struct Trajectory {
  TimeGrid grid;
  std::vector<Vector> states;
  SampledSignal outputs;
};

/// Concrete memristor instance: internal state xdot = -a*x + s*tanh(I/s),
/// memristance M(x) = R0 + r_m*tanh(x), voltage U = M(x)*I. The drive map is
/// 1-Lipschitz for every saturation level s, M is |r_m|-Lipschitz, and
/// |r_m| < R0 keeps M positive, so the FM hypotheses hold with explicit
/// constants.
struct MemristorParams {
  double relaxation_rate = 1.0;   // a
  double drive_saturation = 1.0;  // s
  double base_memristance = 1.0;  // R0
  double modulation_depth = 0.5;  // r_m

  double memristance(double x) const;
  double lipschitz_memristance() const;   // |r_m|
  double max_memristance() const;         // R0 + |r_m|
  void validate() const;
};

enum class MemristorOutput { Voltage, InternalState };

/// Sampled check of the incremental Lyapunov implication for the quadratic
/// candidate V(xa, xb) = |xa - xb|^2:
///   kappa(|xa-xb|) >= |ua-ub|  =>  Vdot <= -rho(|xa-xb|).
struct LyapunovCheckSpec {
  GainFunction kappa = GainFunction::linear(0.5);
  GainFunction rho = GainFunction::linear(1.0);
  std::vector<std::pair<double, double>> x_box;
  std::vector<std::pair<double, double>> u_box;
  std::size_t samples = 1000;
  double slack = 1e-9;
  std::uint64_t seed = 0;
};

struct LyapunovViolation {
  std::size_t sample_index = 0;
  Vector x_a, x_b, u_a, u_b;
  double vdot = 0.0;
  double rho_value = 0.0;
};

struct LyapunovReport {
  std::vector<LyapunovViolation> violations;  // capped selection of witnesses
  std::size_t violation_count = 0;
  std::size_t samples = 0;
  std::size_t premise_hits = 0;
};

/// Classical fixed-step RK4 with `substeps` stages per grid interval and
/// piecewise-linear interpolation of the input between samples. Deterministic;
/// throws DivergenceError with the first non-finite time.
Trajectory integrate(const SystemModel& model, const Vector& x0, const SampledSignal& u,
                     std::size_t substeps = 1);

/// tau * ydot = -y + u, readout identity.
SystemModel lowpass_model(double tau);

/// Trapezoidal quadrature of the convolution realization
/// y(t) = exp(-t/tau) x0 + (1/tau) integral_0^t exp(-(t-s)/tau) u(s) ds,
/// independent of the RK4 path (integrator cross-check oracle).
SampledSignal convolution_oracle(double tau, const SampledSignal& u, double x0);

SystemModel memristor_model(const MemristorParams& params,
                            MemristorOutput output = MemristorOutput::Voltage);

/// Input-delay counterexample: xdot = -x + integral_0^{min(1,t)} u, realized
/// by the gated-integrator augmentation zdot = 1_{t<=1} u, xdot = -x + z.
/// The gate makes the model time-varying; the kink at t = 1 costs the
/// integrator one O(h) panel, so closed-form comparisons need elevated
/// substeps.
SystemModel counterexample_a1_model();

/// Time-varying averaging counterexample: xdot = (-x + u) / (t + 1).
SystemModel counterexample_a2_model();

/// Time-invariant restriction counterexample: x1dot = -x1^2,
/// x2dot = x1 (-x2 + u), output x2, intended initial set x1(0) = 1.
SystemModel counterexample_a3_model();

/// xdot = x control case for the Lyapunov sampler (input ignored).
SystemModel unstable_model();

LyapunovReport lyapunov_sample_check(const SystemModel& model, const LyapunovCheckSpec& spec);

}  // namespace fmlab

#endif  // FMLAB_DYNAMICS_HPP
