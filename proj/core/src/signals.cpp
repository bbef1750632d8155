#include "fmlab/signals.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

namespace fmlab {

TimeGrid::TimeGrid(double t0_, double dt_, std::size_t n_) : t0(t0_), dt(dt_), n(n_) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("grid dt must be positive");
  if (!std::isfinite(t0)) throw ConfigError("grid t0 must be finite");
  if (n < 1) throw ConfigError("grid needs at least one sample");
}

SampledSignal::SampledSignal(TimeGrid grid, std::vector<Vector> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.n)
    throw ShapeError("signal sample count does not match the grid");
  const Eigen::Index d = values_.front().size();
  if (d < 1) throw ShapeError("signal dimension must be at least 1");
  for (const Vector& v : values_) {
    if (v.size() != d) throw ShapeError("signal samples must share one dimension");
    if (!v.allFinite()) throw ConfigError("signal samples must be finite");
  }
}

SampledSignal SampledSignal::from_function(const TimeGrid& grid,
                                           const std::function<Vector(double)>& fn) {
  std::vector<Vector> values;
  values.reserve(grid.n);
  for (std::size_t k = 0; k < grid.n; ++k) values.push_back(fn(grid.time(k)));
  return SampledSignal(grid, std::move(values));
}

SampledSignal SampledSignal::constant(const TimeGrid& grid, const Vector& value) {
  return SampledSignal(grid, std::vector<Vector>(grid.n, value));
}

SampledSignal SampledSignal::zero(const TimeGrid& grid, Eigen::Index dimension) {
  return constant(grid, Vector::Zero(dimension));
}

Vector SampledSignal::interpolate(double t) const {
  if (t <= grid_.t0) return values_.front();
  const double pos = (t - grid_.t0) / grid_.dt;
  const auto lo = static_cast<std::size_t>(pos);
  if (lo >= values_.size() - 1) return values_.back();
  const double frac = pos - static_cast<double>(lo);
  return values_[lo] + frac * (values_[lo + 1] - values_[lo]);
}

SignalGeneratorSpec SignalGeneratorSpec::piecewise_constant(std::size_t levels, double bound,
                                                            std::uint64_t seed,
                                                            Eigen::Index dim) {
  SignalGeneratorSpec s;
  s.kind = SignalKind::PiecewiseConstant;
  s.levels = levels;
  s.bound = bound;
  s.seed = seed;
  s.dimension = dim;
  s.validate();
  return s;
}

SignalGeneratorSpec SignalGeneratorSpec::sinusoid(double amplitude, double angular_frequency,
                                                  double phase, Eigen::Index dim) {
  SignalGeneratorSpec s;
  s.kind = SignalKind::Sinusoid;
  s.amplitude = amplitude;
  s.angular_frequency = angular_frequency;
  s.phase = phase;
  s.dimension = dim;
  s.validate();
  return s;
}

SignalGeneratorSpec SignalGeneratorSpec::smoothed_noise(double bound, double correlation_time,
                                                        std::uint64_t seed, Eigen::Index dim) {
  SignalGeneratorSpec s;
  s.kind = SignalKind::SmoothedNoise;
  s.bound = bound;
  s.correlation_time = correlation_time;
  s.seed = seed;
  s.dimension = dim;
  s.validate();
  return s;
}

double SignalGeneratorSpec::amplitude_bound() const {
  return kind == SignalKind::Sinusoid ? std::abs(amplitude) : bound;
}

void SignalGeneratorSpec::validate() const {
  if (dimension < 1) throw ConfigError("signal dimension must be at least 1");
  switch (kind) {
    case SignalKind::PiecewiseConstant:
      if (levels < 1) throw ConfigError("piecewise-constant signal needs at least one level");
      if (!(bound > 0.0)) throw ConfigError("amplitude bound must be positive");
      break;
    case SignalKind::Sinusoid:
      if (!(std::abs(amplitude) > 0.0)) throw ConfigError("sinusoid amplitude must be nonzero");
      break;
    case SignalKind::SmoothedNoise:
      if (!(bound > 0.0)) throw ConfigError("amplitude bound must be positive");
      if (!(correlation_time > 0.0)) throw ConfigError("correlation time must be positive");
      break;
  }
}

std::uint64_t mix_seed(std::uint64_t state) {
  // splitmix64 finalizer
  std::uint64_t z = state + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::initializer_list<std::uint64_t> parts) {
  std::uint64_t acc = 0x243f6a8885a308d3ULL;
  for (std::uint64_t p : parts) acc = mix_seed(acc ^ p);
  return acc;
}

SampledSignal generate_signal(const SignalGeneratorSpec& spec, const TimeGrid& grid) {
  spec.validate();
  const Eigen::Index d = spec.dimension;
  std::vector<Vector> values(grid.n, Vector::Zero(d));

  switch (spec.kind) {
    case SignalKind::Sinusoid: {
      for (std::size_t k = 0; k < grid.n; ++k) {
        const double v =
            spec.amplitude * std::sin(spec.angular_frequency * grid.time(k) + spec.phase);
        values[k].setConstant(v);
      }
      break;
    }
    case SignalKind::PiecewiseConstant: {
      std::mt19937_64 rng(mix_seed(spec.seed));
      std::uniform_real_distribution<double> level(-spec.bound, spec.bound);
      // Segment boundaries split the horizon evenly; per-channel levels.
      Eigen::MatrixXd table(spec.levels, d);
      for (std::size_t s = 0; s < spec.levels; ++s)
        for (Eigen::Index j = 0; j < d; ++j) table(static_cast<Eigen::Index>(s), j) = level(rng);
      for (std::size_t k = 0; k < grid.n; ++k) {
        std::size_t seg = grid.n <= 1 ? 0 : (k * spec.levels) / grid.n;
        seg = std::min(seg, spec.levels - 1);
        values[k] = table.row(static_cast<Eigen::Index>(seg)).transpose();
      }
      break;
    }
    case SignalKind::SmoothedNoise: {
      std::mt19937_64 rng(mix_seed(spec.seed));
      std::normal_distribution<double> gauss(0.0, 1.0);
      // Stationary AR(1) with the requested correlation time, squashed
      // through tanh so the amplitude bound holds strictly.
      const double rho = std::exp(-grid.dt / spec.correlation_time);
      const double innovation = std::sqrt(std::max(0.0, 1.0 - rho * rho));
      Vector z(d);
      for (Eigen::Index j = 0; j < d; ++j) z[j] = gauss(rng);
      for (std::size_t k = 0; k < grid.n; ++k) {
        if (k > 0)
          for (Eigen::Index j = 0; j < d; ++j) z[j] = rho * z[j] + innovation * gauss(rng);
        for (Eigen::Index j = 0; j < d; ++j) values[k][j] = spec.bound * std::tanh(z[j]);
      }
      break;
    }
  }
  return SampledSignal(grid, std::move(values));
}

SampledSignal signal_diff(const SampledSignal& a, const SampledSignal& b) {
  if (!(a.grid() == b.grid())) throw ShapeError("signal_diff grids differ");
  if (a.dimension() != b.dimension()) throw ShapeError("signal_diff dimensions differ");
  std::vector<Vector> values;
  values.reserve(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) values.push_back(a[k] - b[k]);
  return SampledSignal(a.grid(), std::move(values));
}

double fading_sup_norm(const SampledSignal& delta, const MemoryKernel& kernel,
                       std::size_t t_index) {
  if (t_index >= delta.size()) throw ShapeError("fading_sup_norm index outside the grid");
  const double t = delta.grid().time(t_index);
  double acc = 0.0;
  for (std::size_t k = 0; k <= t_index; ++k) {
    const double lag = t - delta.grid().time(k);
    acc = std::max(acc, kernel(std::max(lag, 0.0)) * delta[k].norm());
  }
  return acc;
}

double sup_norm_prefix(const SampledSignal& delta, std::size_t t_index) {
  if (t_index >= delta.size()) throw ShapeError("sup_norm_prefix index outside the grid");
  double acc = 0.0;
  for (std::size_t k = 0; k <= t_index; ++k) acc = std::max(acc, delta[k].norm());
  return acc;
}

std::vector<double> fading_sup_series(const std::vector<double>& norms, double dt,
                                      const MemoryKernel& kernel) {
  std::vector<double> out(norms.size(), 0.0);
  if (norms.empty()) return out;
  if (kernel.family() == KernelFamily::Exponential) {
    const double decay = std::exp(-kernel.rate() * dt);
    double acc = 0.0;
    for (std::size_t k = 0; k < norms.size(); ++k) {
      acc = std::max(acc * decay, norms[k]);
      out[k] = acc;
    }
    return out;
  }
  if (kernel.is_constant_table()) {
    const double w0 = kernel.weights().front();
    double acc = 0.0;
    for (std::size_t k = 0; k < norms.size(); ++k) {
      acc = std::max(acc, norms[k]);
      out[k] = w0 * acc;
    }
    return out;
  }
  for (std::size_t k = 0; k < norms.size(); ++k) {
    double acc = 0.0;
    for (std::size_t j = 0; j <= k; ++j)
      acc = std::max(acc, kernel(static_cast<double>(k - j) * dt) * norms[j]);
    out[k] = acc;
  }
  return out;
}

std::vector<double> fading_sup_series(const SampledSignal& delta, const MemoryKernel& kernel) {
  std::vector<double> norms(delta.size());
  for (std::size_t k = 0; k < delta.size(); ++k) norms[k] = delta[k].norm();
  return fading_sup_series(norms, delta.grid().dt, kernel);
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_signal_csv(std::ostream& os, const SampledSignal& signal) {
  os << "t";
  for (Eigen::Index j = 0; j < signal.dimension(); ++j) os << ",v" << j;
  os << "\n";
  for (std::size_t k = 0; k < signal.size(); ++k) {
    os << format_double(signal.grid().time(k));
    for (Eigen::Index j = 0; j < signal.dimension(); ++j)
      os << "," << format_double(signal[k][j]);
    os << "\n";
  }
}

void write_signal_csv_file(const std::string& path, const SampledSignal& signal) {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot open for writing: " + path);
  write_signal_csv(os, signal);
}

SampledSignal read_signal_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ConfigError("empty signal CSV");
  Eigen::Index dim = -1;  // from header
  {
    std::size_t commas = std::count(line.begin(), line.end(), ',');
    if (commas < 1 || line.substr(0, 1) != "t")
      throw ConfigError("signal CSV header must be t,v0,...");
    dim = static_cast<Eigen::Index>(commas);
  }
  std::vector<double> times;
  std::vector<Vector> values;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) {
      double v = 0.0;
      auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (res.ec != std::errc()) throw ConfigError("bad CSV number: " + cell);
      row.push_back(v);
    }
    if (row.size() != static_cast<std::size_t>(dim) + 1)
      throw ConfigError("CSV row width does not match the header");
    times.push_back(row[0]);
    Vector v(dim);
    for (Eigen::Index j = 0; j < dim; ++j) v[j] = row[static_cast<std::size_t>(j) + 1];
    values.push_back(std::move(v));
  }
  if (times.size() < 1) throw ConfigError("signal CSV has no samples");
  const double dt = times.size() > 1 ? times[1] - times[0] : 1.0;
  return SampledSignal(TimeGrid(times.front(), dt, times.size()), std::move(values));
}

SampledSignal read_signal_csv_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open for reading: " + path);
  return read_signal_csv(is);
}

}  // namespace fmlab
