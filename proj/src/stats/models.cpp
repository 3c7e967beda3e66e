#include "groupstat/stats/models.hpp"

#include <cmath>
#include <stdexcept>

#include "groupstat/errors.hpp"
#include "groupstat/groups/samplers.hpp"

namespace groupstat::stats {

namespace {

constexpr double kSymmetryTolerance = 1e-10;

double log_erfc(double x) {
  if (x < 20.0) return std::log(std::erfc(x));
  // asymptotic expansion; erfc underflows long before the series matters
  const double x2 = x * x;
  return -x2 - std::log(x * std::sqrt(M_PI)) + std::log1p(-0.5 / x2 + 0.75 / (x2 * x2));
}

// log density of the uncentered convolution N(0,1) + Exp(rate) at w.
double emg_log_density(double w, double rate) {
  return std::log(0.5 * rate) + 0.5 * rate * rate - rate * w +
         log_erfc((rate - w) * M_SQRT1_2);
}

double abs_third_integrand(double z, double rate) {
  const double w = z + 1.0 / rate;  // shift back to the uncentered variable
  const double log_f = emg_log_density(w, rate);
  const double cube = std::fabs(z) * std::fabs(z) * std::fabs(z);
  return cube == 0.0 ? 0.0 : cube * std::exp(log_f);
}

double composite_simpson(double (*f)(double, double), double rate, double a, double b,
                         std::size_t intervals) {
  const double h = (b - a) / static_cast<double>(intervals);
  double sum = f(a, rate) + f(b, rate);
  for (std::size_t i = 1; i < intervals; ++i)
    sum += f(a + h * static_cast<double>(i), rate) * (i % 2 == 1 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

// Composite Simpson with interval doubling until two refinements agree.
double integrate(double (*f)(double, double), double rate, double a, double b, double rel_tol) {
  double previous = composite_simpson(f, rate, a, b, 64);
  for (std::size_t intervals = 128; intervals <= (std::size_t{1} << 23); intervals *= 2) {
    const double current = composite_simpson(f, rate, a, b, intervals);
    if (std::fabs(current - previous) <= rel_tol * std::fabs(current) + 1e-300) return current;
    previous = current;
  }
  throw NumericError("emgd moment quadrature did not converge");
}

}  // namespace

EmgdModel EmgdModel::with_rate(double rate) {
  if (!(rate > 0.0)) throw std::invalid_argument("EmgdModel: rate must be positive");
  EmgdModel model;
  model.rate_ = rate;
  return model;
}

double EmgdModel::rate() const {
  if (!rate_) throw std::logic_error("EmgdModel: pure-Gaussian model has no rate");
  return *rate_;
}

double emgd_sample(const EmgdModel& model, core::SeededStream& stream) {
  const double gaussian = stream.next_gaussian();
  if (!model.has_exponential()) return gaussian;
  const double rate = model.rate();
  return gaussian + stream.next_exponential() / rate - 1.0 / rate;
}

double emgd_variance(const EmgdModel& model) {
  if (!model.has_exponential()) return 1.0;
  const double rate = model.rate();
  return 1.0 + 1.0 / (rate * rate);
}

double emgd_abs_third_moment(const EmgdModel& model) {
  if (!model.has_exponential()) return 2.0 * std::sqrt(2.0 / M_PI);
  const double rate = model.rate();
  // Z >= -1/rate - (Gaussian part); the right tail decays like exp(-rate z).
  const double lo = -1.0 / rate - 42.0;
  const double hi = -1.0 / rate + 42.0 + 120.0 / rate;
  return integrate(abs_third_integrand, rate, lo, hi, 1e-11);
}

double lil_ratio(std::span<const double> x, double p) {
  const std::size_t n = x.size();
  if (n < 3) throw std::invalid_argument("lil_ratio: need dimension at least 3");
  if (!(p >= 1.0)) throw std::invalid_argument("lil_ratio: exponent must be at least 1");
  const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
  double sum = 0.0;
  for (const double v : x) sum += v;
  const double nd = static_cast<double>(n);
  const double denom = std::pow(2.0, 0.5 + inv_p) * std::pow(nd, 0.5 - inv_p) *
                       std::sqrt(std::log(std::log(nd)));
  return std::fabs(sum) / denom;
}

namespace {

void check_bilinear_inputs(const Eigen::MatrixXd& a, std::span<const double> x,
                           std::span<const double> y) {
  if (a.rows() != a.cols()) throw std::invalid_argument("rotation_bilinear: matrix must be square");
  if (static_cast<std::size_t>(a.rows()) != x.size() || x.size() != y.size())
    throw std::invalid_argument("rotation_bilinear: dimension mismatch");
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = i + 1; j < a.cols(); ++j)
      if (std::fabs(a(i, j) - a(j, i)) > kSymmetryTolerance)
        throw std::invalid_argument("rotation_bilinear: matrix must be symmetric");
}

}  // namespace

double rotation_bilinear_exact(const Eigen::MatrixXd& a, std::span<const double> x,
                               std::span<const double> y) {
  check_bilinear_inputs(a, x, y);
  double inner = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) inner += x[i] * y[i];
  return a.trace() / static_cast<double>(a.rows()) * inner;
}

MonteCarloEstimate rotation_bilinear_mc(const Eigen::MatrixXd& a, std::span<const double> x,
                                        std::span<const double> y, std::size_t draws,
                                        core::SeededStream stream, ExecMode mode) {
  check_bilinear_inputs(a, x, y);
  if (draws < 2) throw std::invalid_argument("rotation_bilinear_mc: need at least 2 draws");
  const auto dim = static_cast<Eigen::Index>(x.size());
  const Eigen::Map<const Eigen::VectorXd> vx(x.data(), dim);
  const Eigen::Map<const Eigen::VectorXd> vy(y.data(), dim);
  std::vector<double> values(draws);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (mode == ExecMode::OpenMP)
#endif
  for (std::int64_t k = 0; k < static_cast<std::int64_t>(draws); ++k) {
    auto lane = stream.substream(static_cast<std::uint64_t>(k));
    const auto rotation = groups::sample_rotation(x.size(), lane);
    values[static_cast<std::size_t>(k)] =
        (rotation.matrix * vx).dot(a * (rotation.matrix * vy));
  }
  (void)mode;
  double mean = 0.0;
  for (const double v : values) mean += v;
  mean /= static_cast<double>(draws);
  double ss = 0.0;
  for (const double v : values) ss += (v - mean) * (v - mean);
  const double nd = static_cast<double>(draws);
  return {mean, std::sqrt(ss / (nd - 1.0) / nd)};
}

}  // namespace groupstat::stats
