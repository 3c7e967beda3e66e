#pragma once

#include <span>
#include <vector>

#include "groupstat/core/stream.hpp"

namespace groupstat::stats {

/// T(x) = sum theta_i x_i with sum theta_i^2 = 1.
class WeightedStatistic {
 public:
  /// Validates the unit-norm constraint to 1e-10.
  explicit WeightedStatistic(std::vector<double> weights);

  /// The common choice theta_i = n^{-1/2}.
  static WeightedStatistic equal_weights(std::size_t n);

  const std::vector<double>& weights() const { return weights_; }

  /// Lipschitz constant of T under sign flips: max_i |theta_i|.
  double lipschitz_constant() const;

  double operator()(std::span<const double> x) const;

 private:
  std::vector<double> weights_;
};

double weighted_sum(std::span<const double> x, const WeightedStatistic& statistic);

/// Mean of the first n coordinates minus mean of the last m.
double mean_diff(std::span<const double> x, std::size_t n, std::size_t m);

/// Two independent Gaussian samples of sizes n and m with a common mean and
/// variances var1, var2.
struct TwoSampleModel {
  std::size_t n = 1;
  std::size_t m = 1;
  double var1 = 1.0;
  double var2 = 1.0;
  double mean = 0.0;

  void validate() const;
};

/// One dataset from the model: n + m coordinates, first group first.
std::vector<double> sample_two_sample(const TwoSampleModel& model, core::SeededStream& stream);

enum class TTestVariant { Pooled, Welch };

struct TTestResult {
  double statistic;
  double df;
  double p_value;  ///< two-sided
};

/// Pooled or Welch two-sample t statistic with its degrees of freedom and
/// two-sided p-value.  Requires at least two observations per group and a
/// nonzero variance estimate.
TTestResult two_sample_t(std::span<const double> x, std::size_t n, std::size_t m,
                         TTestVariant variant);

/// sqrt(n) xbar / s with df = n - 1.
TTestResult one_sample_t(std::span<const double> x);

}  // namespace groupstat::stats
