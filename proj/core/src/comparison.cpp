#include "fmlab/comparison.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fmlab {

namespace {

void check_finite(double v, const char* name) {
  if (!std::isfinite(v)) throw ConfigError(std::string(name) + " must be finite");
}

// Linear interpolation over a strictly increasing abscissa table.
// Holds the first/last ordinate outside the table.
double interp_hold(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
  if (x <= xs.front()) return ys.front();
  if (x >= xs.back()) return ys.back();
  auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const std::size_t hi = static_cast<std::size_t>(it - xs.begin());
  const std::size_t lo = hi - 1;
  const double frac = (x - xs[lo]) / (xs[hi] - xs[lo]);
  return ys[lo] + frac * (ys[hi] - ys[lo]);
}

void check_increasing(const std::vector<double>& xs, const char* name) {
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (!(xs[i] > xs[i - 1]))
      throw ConfigError(std::string(name) + " must be strictly increasing");
  }
}

}  // namespace

MemoryKernel MemoryKernel::exponential(double rate) {
  check_finite(rate, "kernel rate");
  if (rate <= 0.0) throw ConfigError("exponential kernel rate must be positive");
  MemoryKernel k;
  k.family_ = KernelFamily::Exponential;
  k.rate_ = rate;
  return k;
}

MemoryKernel MemoryKernel::power_law(double exponent, double scale) {
  check_finite(exponent, "kernel exponent");
  check_finite(scale, "kernel scale");
  if (exponent <= 0.0) throw ConfigError("power-law kernel exponent must be positive");
  if (scale <= 0.0) throw ConfigError("power-law kernel scale must be positive");
  MemoryKernel k;
  k.family_ = KernelFamily::PowerLaw;
  k.exponent_ = exponent;
  k.scale_ = scale;
  return k;
}

MemoryKernel MemoryKernel::tabulated(std::vector<double> lags, std::vector<double> weights,
                                     double tail_tolerance) {
  if (lags.empty() || weights.empty()) throw DomainError("tabulated kernel needs samples");
  if (lags.size() != weights.size())
    throw ConfigError("tabulated kernel lags/weights size mismatch");
  check_increasing(lags, "kernel lags");
  if (lags.front() < 0.0) throw ConfigError("kernel lags must be nonnegative");
  for (std::size_t i = 0; i < weights.size(); ++i) {
    check_finite(weights[i], "kernel weight");
    if (weights[i] < 0.0 || weights[i] > 1.0)
      throw ConfigError("kernel weights must lie in [0,1]");
    if (i > 0 && weights[i] > weights[i - 1])
      throw ConfigError("kernel weights must be nonincreasing");
  }
  if (!(tail_tolerance >= 0.0 && tail_tolerance <= 1.0))
    throw ConfigError("kernel tail tolerance must lie in [0,1]");
  if (weights.back() > tail_tolerance)
    throw ConfigError("tabulated kernel tail exceeds the declared tolerance");
  MemoryKernel k;
  k.family_ = KernelFamily::Tabulated;
  k.lags_ = std::move(lags);
  k.weights_ = std::move(weights);
  k.tail_tolerance_ = tail_tolerance;
  return k;
}

double MemoryKernel::operator()(double lag) const {
  if (lag < 0.0) throw DomainError("kernel lag must be nonnegative");
  switch (family_) {
    case KernelFamily::Exponential:
      return std::exp(-rate_ * lag);
    case KernelFamily::PowerLaw:
      return std::pow(1.0 + lag / scale_, -exponent_);
    case KernelFamily::Tabulated:
      return interp_hold(lags_, weights_, lag);
  }
  return 0.0;  // unreachable
}

bool MemoryKernel::is_constant_table() const {
  if (family_ != KernelFamily::Tabulated) return false;
  return std::all_of(weights_.begin(), weights_.end(),
                     [&](double w) { return w == weights_.front(); });
}

MemoryKernel kernel_monotone_envelope(const std::vector<double>& lags,
                                      const std::vector<double>& raw_weights,
                                      double tail_tolerance) {
  if (raw_weights.empty()) throw DomainError("monotone envelope of an empty sample set");
  if (lags.size() != raw_weights.size())
    throw ConfigError("envelope lags/weights size mismatch");
  for (double w : raw_weights) {
    if (!(w >= 0.0 && w <= 1.0)) throw ConfigError("raw weights must lie in [0,1]");
  }
  std::vector<double> env(raw_weights);
  for (std::size_t i = env.size() - 1; i-- > 0;) env[i] = std::max(env[i], env[i + 1]);
  return MemoryKernel::tabulated(lags, env, tail_tolerance);
}

GainFunction GainFunction::linear(double slope) {
  check_finite(slope, "gain slope");
  if (slope <= 0.0) throw ConfigError("linear gain slope must be positive");
  GainFunction g;
  g.family_ = GainFamily::Linear;
  g.slope_ = slope;
  return g;
}

GainFunction GainFunction::polynomial(std::vector<double> coefficients) {
  if (coefficients.empty()) throw ConfigError("polynomial gain needs coefficients");
  bool any_positive = false;
  for (double c : coefficients) {
    check_finite(c, "gain coefficient");
    if (c < 0.0) throw ConfigError("polynomial gain coefficients must be nonnegative");
    if (c > 0.0) any_positive = true;
  }
  if (!any_positive) throw ConfigError("polynomial gain must not be identically zero");
  GainFunction g;
  g.family_ = GainFamily::Polynomial;
  g.coefficients_ = std::move(coefficients);
  return g;
}

GainFunction GainFunction::tabulated(std::vector<double> args, std::vector<double> values) {
  if (args.size() < 2 || args.size() != values.size())
    throw ConfigError("tabulated gain needs matching samples (at least two)");
  check_increasing(args, "gain args");
  check_increasing(values, "gain values");
  if (args.front() != 0.0 || values.front() != 0.0)
    throw ConfigError("tabulated gain must pass through the origin");
  GainFunction g;
  g.family_ = GainFamily::Tabulated;
  g.args_ = std::move(args);
  g.values_ = std::move(values);
  return g;
}

double GainFunction::operator()(double r) const {
  if (r < 0.0) throw DomainError("gain argument must be nonnegative");
  switch (family_) {
    case GainFamily::Linear:
      return slope_ * r;
    case GainFamily::Polynomial: {
      // Horner over c1*r + c2*r^2 + ...
      double acc = 0.0;
      for (std::size_t i = coefficients_.size(); i-- > 0;) acc = acc * r + coefficients_[i];
      return acc * r;
    }
    case GainFamily::Tabulated: {
      if (r >= args_.back()) {
        const std::size_t n = args_.size();
        const double s = (values_[n - 1] - values_[n - 2]) / (args_[n - 1] - args_[n - 2]);
        return values_.back() + s * (r - args_.back());
      }
      return interp_hold(args_, values_, r);
    }
  }
  return 0.0;  // unreachable
}

double GainFunction::inverse(double value) const {
  if (value < 0.0) throw DomainError("gain inverse argument must be nonnegative");
  if (value == 0.0) return 0.0;
  switch (family_) {
    case GainFamily::Linear:
      return value / slope_;
    case GainFamily::Polynomial: {
      double hi = 1.0;
      while ((*this)(hi) < value) {
        hi *= 2.0;
        if (hi > 1e154) throw NumericError("polynomial gain inverse bracket overflow");
      }
      double lo = 0.0;
      for (int it = 0; it < 200 && (hi - lo) > 1e-15 * std::max(1.0, hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        ((*this)(mid) < value ? lo : hi) = mid;
      }
      return 0.5 * (lo + hi);
    }
    case GainFamily::Tabulated: {
      if (value > values_.back())
        throw DomainError("gain inverse value outside tabulated range");
      return interp_hold(values_, args_, value);
    }
  }
  return 0.0;  // unreachable
}

KLFunction KLFunction::exp_decay(GainFunction gain, double rate) {
  check_finite(rate, "KL rate");
  if (rate <= 0.0) throw ConfigError("KL decay rate must be positive");
  KLFunction b;
  b.family_ = KLFamily::ExpDecay;
  b.gain_ = std::move(gain);
  b.rate_ = rate;
  return b;
}

KLFunction KLFunction::product(GainFunction k_part, MemoryKernel kernel) {
  KLFunction b;
  b.family_ = KLFamily::Product;
  b.gain_ = std::move(k_part);
  b.kernel_ = std::move(kernel);
  return b;
}

double KLFunction::operator()(double r, double t) const {
  if (r < 0.0 || t < 0.0) throw DomainError("KL arguments must be nonnegative");
  switch (family_) {
    case KLFamily::ExpDecay:
      return gain_(r) * std::exp(-rate_ * t);
    case KLFamily::Product:
      return gain_(r) * kernel_(t);
  }
  return 0.0;  // unreachable
}

MemoryKernel kernel_from_gain(const GainFunction& mu, double lambda, double input_bound,
                              const std::vector<double>& lag_grid) {
  if (lambda <= 0.0) throw ConfigError("kernel_from_gain needs lambda > 0");
  if (input_bound <= 0.0) throw ConfigError("kernel_from_gain needs a positive input bound");
  if (lag_grid.empty()) throw DomainError("kernel_from_gain needs a lag grid");
  check_increasing(lag_grid, "lag grid");
  if (lag_grid.front() < 0.0) throw ConfigError("lag grid must be nonnegative");

  constexpr int kRPoints = 64;
  const double r_max = 2.0 * input_bound;
  const double r_min = r_max * 1e-3;
  std::vector<double> r_grid(kRPoints);
  const double log_step = std::log(r_max / r_min) / (kRPoints - 1);
  for (int i = 0; i < kRPoints; ++i) r_grid[i] = r_min * std::exp(log_step * i);
  r_grid.back() = r_max;

  std::vector<double> mu_of_r(kRPoints);
  for (int i = 0; i < kRPoints; ++i) mu_of_r[i] = mu(r_grid[i]);

  std::vector<double> weights(lag_grid.size());
  for (std::size_t k = 0; k < lag_grid.size(); ++k) {
    const double decay = std::exp(-0.5 * lambda * lag_grid[k]);
    double sup = 0.0;
    for (int i = 0; i < kRPoints; ++i) {
      double z;
      try {
        z = mu.inverse(decay * mu_of_r[i]);
      } catch (const DomainError& e) {
        throw NumericError(std::string("kernel_from_gain: mu not invertible on the "
                                       "required range: ") +
                           e.what());
      }
      sup = std::max(sup, z / r_grid[i]);
    }
    weights[k] = std::clamp(sup, 0.0, 1.0);
  }
  return kernel_monotone_envelope(lag_grid, weights, weights.back());
}

}  // namespace fmlab
