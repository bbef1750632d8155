#ifndef FMLAB_SIGNALS_HPP
#define FMLAB_SIGNALS_HPP

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "fmlab/comparison.hpp"
#include "fmlab/errors.hpp"

namespace fmlab {

using Vector = Eigen::VectorXd;

/// Uniform time grid t0 + k*dt, k = 0..n-1. A single-sample grid is the
/// degenerate zero-length horizon.
struct TimeGrid {
  double t0 = 0.0;
  double dt = 1.0;
  std::size_t n = 2;

  TimeGrid() = default;
  TimeGrid(double t0_, double dt_, std::size_t n_);

  double time(std::size_t k) const { return t0 + static_cast<double>(k) * dt; }
  double horizon() const { return time(n - 1); }

  bool operator==(const TimeGrid& other) const = default;
};

/// Vector-valued signal sampled on a uniform grid.
class SampledSignal {
public:
  SampledSignal(TimeGrid grid, std::vector<Vector> values);

  /// Builds a signal by evaluating fn on every grid time.
  static SampledSignal from_function(const TimeGrid& grid,
                                     const std::function<Vector(double)>& fn);
  static SampledSignal constant(const TimeGrid& grid, const Vector& value);
  static SampledSignal zero(const TimeGrid& grid, Eigen::Index dimension);

  const TimeGrid& grid() const { return grid_; }
  Eigen::Index dimension() const { return values_.empty() ? 0 : values_.front().size(); }
  std::size_t size() const { return values_.size(); }
  const Vector& operator[](std::size_t k) const { return values_[k]; }
  Vector& operator[](std::size_t k) { return values_[k]; }
  const std::vector<Vector>& values() const { return values_; }

  /// Piecewise-linear interpolation at an arbitrary time inside the grid
  /// (held constant outside). Used by the integrator.
  Vector interpolate(double t) const;

private:
  TimeGrid grid_;
  std::vector<Vector> values_;
};

enum class SignalKind { PiecewiseConstant, Sinusoid, SmoothedNoise };

/// Generator specification. The amplitude bound is the equibounded-input
/// constant: every generated signal satisfies sup_k |u(t_k)| <= bound
/// per channel family contract.
struct SignalGeneratorSpec {
  SignalKind kind = SignalKind::PiecewiseConstant;
  // PiecewiseConstant
  std::size_t levels = 4;
  double bound = 1.0;
  // Sinusoid
  double amplitude = 1.0;
  double angular_frequency = 1.0;
  double phase = 0.0;
  // SmoothedNoise
  double correlation_time = 1.0;

  std::uint64_t seed = 0;
  Eigen::Index dimension = 1;

  static SignalGeneratorSpec piecewise_constant(std::size_t levels, double bound,
                                                std::uint64_t seed, Eigen::Index dim = 1);
  static SignalGeneratorSpec sinusoid(double amplitude, double angular_frequency, double phase,
                                      Eigen::Index dim = 1);
  static SignalGeneratorSpec smoothed_noise(double bound, double correlation_time,
                                            std::uint64_t seed, Eigen::Index dim = 1);

  double amplitude_bound() const;
  void validate() const;
};

/// Deterministic signal synthesis: same spec and grid, same samples.
SampledSignal generate_signal(const SignalGeneratorSpec& spec, const TimeGrid& grid);

/// Pointwise difference a - b; grids and dimensions must match.
SampledSignal signal_diff(const SampledSignal& a, const SampledSignal& b);

/// max over samples k <= t_index of w(t - t_k) * |delta(t_k)| with the
/// Euclidean vector norm (the grid realization of the fading ess-sup).
double fading_sup_norm(const SampledSignal& delta, const MemoryKernel& kernel,
                       std::size_t t_index);

/// Plain running sup norm: max over samples k <= t_index of |delta(t_k)|.
double sup_norm_prefix(const SampledSignal& delta, std::size_t t_index);

/// Whole series of fading sup norms, one value per grid index. Exponential
/// kernels use an O(n) decaying-running-max recursion, constant tables the
/// plain running max; other kernels fall back to the quadratic direct form.
std::vector<double> fading_sup_series(const SampledSignal& delta, const MemoryKernel& kernel);

/// Series variant operating on precomputed per-sample norms.
std::vector<double> fading_sup_series(const std::vector<double>& norms, double dt,
                                      const MemoryKernel& kernel);

/// CSV with header "t,v0,v1,..." and shortest round-trip float formatting.
void write_signal_csv(std::ostream& os, const SampledSignal& signal);
void write_signal_csv_file(const std::string& path, const SampledSignal& signal);
SampledSignal read_signal_csv(std::istream& is);
SampledSignal read_signal_csv_file(const std::string& path);

/// Shortest decimal representation that round-trips to the same double.
std::string format_double(double v);

/// splitmix64 step; used to derive independent per-pair seeds.
std::uint64_t mix_seed(std::uint64_t state);
std::uint64_t derive_seed(std::initializer_list<std::uint64_t> parts);

}  // namespace fmlab

#endif  // FMLAB_SIGNALS_HPP
