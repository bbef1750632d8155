#ifndef FMLAB_COMPARISON_HPP
#define FMLAB_COMPARISON_HPP

#include <vector>

#include "fmlab/errors.hpp"

namespace fmlab {

enum class KernelFamily { Exponential, PowerLaw, Tabulated };

/// Memory kernel w: lag -> [0,1], nonincreasing with vanishing tail.
///
/// Tabulated kernels interpolate linearly between stored lags and hold the
/// final weight beyond the grid. The tail tolerance declared at construction
/// bounds the final stored weight; an all-ones table with tolerance 1 degrades
/// the kernel-weighted sup norm to the plain running sup norm.
class MemoryKernel {
public:
  static MemoryKernel exponential(double rate);
  static MemoryKernel power_law(double exponent, double scale);
  static MemoryKernel tabulated(std::vector<double> lags, std::vector<double> weights,
                                double tail_tolerance = 1.0);

  /// w(lag). Negative lags are a domain error.
  double operator()(double lag) const;

  KernelFamily family() const { return family_; }
  double rate() const { return rate_; }
  double exponent() const { return exponent_; }
  double scale() const { return scale_; }
  double tail_tolerance() const { return tail_tolerance_; }
  const std::vector<double>& lags() const { return lags_; }
  const std::vector<double>& weights() const { return weights_; }

  /// True when every stored weight equals the same constant (fast-path hook
  /// for the plain sup norm).
  bool is_constant_table() const;

private:
  MemoryKernel() = default;

  KernelFamily family_ = KernelFamily::Exponential;
  double rate_ = 0.0;
  double exponent_ = 0.0;
  double scale_ = 0.0;
  double tail_tolerance_ = 1.0;
  std::vector<double> lags_;
  std::vector<double> weights_;
};

/// Pointwise-smallest nonincreasing majorant of raw weight samples
/// (reverse running maximum), returned as a Tabulated kernel.
MemoryKernel kernel_monotone_envelope(const std::vector<double>& lags,
                                      const std::vector<double>& raw_weights,
                                      double tail_tolerance = 1.0);

enum class GainFamily { Linear, Polynomial, Tabulated };

/// Class-K gain: zero at zero, strictly increasing. Families are restricted
/// to ones with computable inverses.
class GainFunction {
public:
  static GainFunction linear(double slope);
  /// coefficients[k] multiplies r^(k+1); the constant term is identically zero.
  static GainFunction polynomial(std::vector<double> coefficients);
  /// Strictly increasing samples through the origin; evaluation beyond the
  /// last sample extrapolates with the final segment slope.
  static GainFunction tabulated(std::vector<double> args, std::vector<double> values);

  double operator()(double r) const;

  /// gamma^{-1}(value); bisection for polynomials, inverse interpolation for
  /// tables. Values outside a table's range are a domain error.
  double inverse(double value) const;

  GainFamily family() const { return family_; }
  double slope() const { return slope_; }
  const std::vector<double>& coefficients() const { return coefficients_; }
  const std::vector<double>& args() const { return args_; }
  const std::vector<double>& values() const { return values_; }

private:
  GainFunction() = default;

  GainFamily family_ = GainFamily::Linear;
  double slope_ = 1.0;
  std::vector<double> coefficients_;
  std::vector<double> args_;
  std::vector<double> values_;
};

enum class KLFamily { ExpDecay, Product };

/// Class-KL dissipation term beta(r, t).
class KLFunction {
public:
  /// beta(r,t) = gain(r) * exp(-rate * t)
  static KLFunction exp_decay(GainFunction gain, double rate);
  /// beta(r,t) = k_part(r) * kernel(t)
  static KLFunction product(GainFunction k_part, MemoryKernel kernel);

  double operator()(double r, double t) const;

  KLFamily family() const { return family_; }
  const GainFunction& gain() const { return gain_; }
  double rate() const { return rate_; }
  const MemoryKernel& kernel() const { return kernel_; }

private:
  KLFunction() : gain_(GainFunction::linear(1.0)), kernel_(MemoryKernel::exponential(1.0)) {}

  KLFamily family_ = KLFamily::ExpDecay;
  GainFunction gain_;
  double rate_ = 1.0;
  MemoryKernel kernel_;
};

/// Kernel construction from a K-infinity dissipation gain mu and decay rate
/// lambda: w(t) = sup over r in (0, 2*input_bound] of
/// mu^{-1}(exp(-lambda*t/2) * mu(r)) / r, the sup taken over a 64-point
/// logarithmic r-grid, followed by a clamp to [0,1] and an envelope pass.
MemoryKernel kernel_from_gain(const GainFunction& mu, double lambda, double input_bound,
                              const std::vector<double>& lag_grid);

}  // namespace fmlab

#endif  // FMLAB_COMPARISON_HPP
