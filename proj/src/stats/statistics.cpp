#include "groupstat/stats/statistics.hpp"

#include <cmath>
#include <stdexcept>

#include "groupstat/core/special.hpp"

namespace groupstat::stats {

namespace {

constexpr double kUnitNormTolerance = 1e-10;

struct GroupMoments {
  double mean;
  double variance;  // sample variance, n-1 divisor
};

GroupMoments moments(std::span<const double> x) {
  const double count = static_cast<double>(x.size());
  double mean = 0.0;
  for (const double v : x) mean += v;
  mean /= count;
  double ss = 0.0;
  for (const double v : x) ss += (v - mean) * (v - mean);
  return {mean, ss / (count - 1.0)};
}

double two_sided_p(double statistic, double df) {
  return 2.0 * (1.0 - core::student_t_cdf(std::fabs(statistic), df));
}

}  // namespace

WeightedStatistic::WeightedStatistic(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw std::invalid_argument("WeightedStatistic: weights must be nonempty");
  double norm = 0.0;
  for (const double w : weights_) norm += w * w;
  if (std::fabs(norm - 1.0) > kUnitNormTolerance)
    throw std::invalid_argument("WeightedStatistic: weights must have unit sum of squares");
}

WeightedStatistic WeightedStatistic::equal_weights(std::size_t n) {
  if (n == 0) throw std::invalid_argument("WeightedStatistic: dimension must be positive");
  return WeightedStatistic(std::vector<double>(n, 1.0 / std::sqrt(static_cast<double>(n))));
}

double WeightedStatistic::lipschitz_constant() const {
  double largest = 0.0;
  for (const double w : weights_) largest = std::max(largest, std::fabs(w));
  return largest;
}

double WeightedStatistic::operator()(std::span<const double> x) const {
  if (x.size() != weights_.size())
    throw std::invalid_argument("WeightedStatistic: length mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) sum += weights_[i] * x[i];
  return sum;
}

double weighted_sum(std::span<const double> x, const WeightedStatistic& statistic) {
  return statistic(x);
}

double mean_diff(std::span<const double> x, std::size_t n, std::size_t m) {
  if (n == 0 || m == 0) throw std::invalid_argument("mean_diff: group sizes must be positive");
  if (x.size() != n + m) throw std::invalid_argument("mean_diff: length mismatch");
  double first = 0.0;
  for (std::size_t i = 0; i < n; ++i) first += x[i];
  double second = 0.0;
  for (std::size_t i = n; i < n + m; ++i) second += x[i];
  return first / static_cast<double>(n) - second / static_cast<double>(m);
}

void TwoSampleModel::validate() const {
  if (n == 0 || m == 0) throw std::invalid_argument("TwoSampleModel: sample sizes must be positive");
  if (!(var1 > 0.0) || !(var2 > 0.0))
    throw std::invalid_argument("TwoSampleModel: variances must be positive");
}

std::vector<double> sample_two_sample(const TwoSampleModel& model, core::SeededStream& stream) {
  model.validate();
  std::vector<double> x(model.n + model.m);
  const double sd1 = std::sqrt(model.var1);
  const double sd2 = std::sqrt(model.var2);
  for (std::size_t i = 0; i < model.n; ++i) x[i] = model.mean + sd1 * stream.next_gaussian();
  for (std::size_t i = model.n; i < x.size(); ++i) x[i] = model.mean + sd2 * stream.next_gaussian();
  return x;
}

TTestResult two_sample_t(std::span<const double> x, std::size_t n, std::size_t m,
                         TTestVariant variant) {
  if (n < 2 || m < 2) throw std::invalid_argument("two_sample_t: need at least 2 per group");
  if (x.size() != n + m) throw std::invalid_argument("two_sample_t: length mismatch");
  const GroupMoments g1 = moments(x.first(n));
  const GroupMoments g2 = moments(x.subspan(n));
  const double nd = static_cast<double>(n);
  const double md = static_cast<double>(m);
  const double diff = g1.mean - g2.mean;

  if (variant == TTestVariant::Pooled) {
    const double pooled = ((nd - 1.0) * g1.variance + (md - 1.0) * g2.variance) / (nd + md - 2.0);
    if (!(pooled > 0.0)) throw std::domain_error("two_sample_t: zero pooled variance");
    const double statistic = diff / std::sqrt(pooled * (1.0 / nd + 1.0 / md));
    const double df = nd + md - 2.0;
    return {statistic, df, two_sided_p(statistic, df)};
  }

  const double se2 = g1.variance / nd + g2.variance / md;
  if (!(se2 > 0.0)) throw std::domain_error("two_sample_t: zero variance in both groups");
  const double statistic = diff / std::sqrt(se2);
  const double df = se2 * se2 /
                    (g1.variance * g1.variance / (nd * nd * (nd - 1.0)) +
                     g2.variance * g2.variance / (md * md * (md - 1.0)));
  return {statistic, df, two_sided_p(statistic, df)};
}

TTestResult one_sample_t(std::span<const double> x) {
  if (x.size() < 2) throw std::invalid_argument("one_sample_t: need at least 2 observations");
  const GroupMoments g = moments(x);
  if (!(g.variance > 0.0)) throw std::domain_error("one_sample_t: zero sample variance");
  const double nd = static_cast<double>(x.size());
  const double statistic = std::sqrt(nd) * g.mean / std::sqrt(g.variance);
  const double df = nd - 1.0;
  return {statistic, df, two_sided_p(statistic, df)};
}

}  // namespace groupstat::stats
