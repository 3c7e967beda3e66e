#include "groupstat/core/special.hpp"

#include <cmath>
#include <stdexcept>

#include "groupstat/errors.hpp"

namespace groupstat::core {

void SpecialFnConfig::validate() const {
  if (!(newton_tolerance > 0.0)) throw std::invalid_argument("newton_tolerance must be positive");
  if (max_iterations < 1) throw std::invalid_argument("max_iterations must be at least 1");
}

double log_gamma(double x) {
  if (!(x > 0.0)) throw std::invalid_argument("log_gamma: argument must be positive");
  return std::lgamma(x);
}

double normal_cdf(double t) {
  return 0.5 * std::erfc(-t * M_SQRT1_2);
}

namespace {

// Lentz's algorithm on the textbook continued fraction; valid for
// x < (a+1)/(a+b+2), the symmetric case is handled by the caller.
double incomplete_beta_cf(double x, double a, double b) {
  constexpr double kTiny = 1e-300;
  constexpr double kEps = 1e-15;
  constexpr int kMaxIter = 500;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int iter = 1; iter <= kMaxIter; ++iter) {
    const double m = iter;
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  throw NumericError("incomplete beta continued fraction did not converge");
}

}  // namespace

double regularized_incomplete_beta(double x, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("incomplete beta: a, b must be positive");
  if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("incomplete beta: x must lie in [0,1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  if (x > (a + 1.0) / (a + b + 2.0)) return 1.0 - regularized_incomplete_beta(1.0 - x, b, a);
  const double log_front =
      a * std::log(x) + b * std::log1p(-x) - (std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
  return std::exp(log_front) * incomplete_beta_cf(x, a, b) / a;
}

double student_t_cdf(double t, double df) {
  if (!(df > 0.0)) throw std::invalid_argument("student_t_cdf: df must be positive");
  if (t == 0.0) return 0.5;
  if (std::isinf(t)) return t > 0.0 ? 1.0 : 0.0;
  const double x = df / (df + t * t);
  const double half_tail = 0.5 * regularized_incomplete_beta(x, 0.5 * df, 0.5);
  return t > 0.0 ? 1.0 - half_tail : half_tail;
}

double lambert_w0(double z, const SpecialFnConfig& config) {
  config.validate();
  if (!(z >= 0.0)) throw std::invalid_argument("lambert_w0: argument must be nonnegative");
  if (z == 0.0) return 0.0;
  // w e^w = z rewritten as w - z e^{-w} = 0 to stay finite for large z.
  double w = std::log1p(z);
  for (int iter = 0; iter < config.max_iterations; ++iter) {
    const double step = (w - z * std::exp(-w)) / (1.0 + w);
    w -= step;
    if (std::fabs(step) <= config.newton_tolerance * std::fabs(w)) return w;
  }
  throw NumericError("lambert_w0 did not converge");
}

double log_binomial(std::size_t n, std::size_t k) {
  if (k > n) throw std::invalid_argument("log_binomial: k must not exceed n");
  const double nd = static_cast<double>(n);
  const double kd = static_cast<double>(k);
  return std::lgamma(nd + 1.0) - std::lgamma(kd + 1.0) - std::lgamma(nd - kd + 1.0);
}

double log_hypergeom_weight(std::size_t j, std::size_t n, std::size_t m) {
  if (m > n) throw std::invalid_argument("log_hypergeom_weight: requires m <= n");
  if (j > m) throw std::invalid_argument("log_hypergeom_weight: requires j <= m");
  return log_binomial(n, j) + log_binomial(m, m - j) - log_binomial(n + m, m);
}

}  // namespace groupstat::core
