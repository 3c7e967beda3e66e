#include "groupstat/bounds/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "groupstat/core/special.hpp"

namespace groupstat::bounds {

void SOnTailParams::validate() const {
  if (!(kappa0 > 0.0)) throw std::invalid_argument("SOnTailParams: kappa0 must be positive");
  if (!(prefactor >= 1.0)) throw std::invalid_argument("SOnTailParams: prefactor must be >= 1");
}

double berry_esseen_one_sample(double sigma, double omega, std::span<const double> theta,
                               double c) {
  if (!(sigma > 0.0)) throw std::invalid_argument("berry_esseen: sigma must be positive");
  if (!(omega >= 0.0)) throw std::invalid_argument("berry_esseen: omega must be nonnegative");
  if (!(c > 0.0)) throw std::invalid_argument("berry_esseen: constant must be positive");
  double cubes = 0.0;
  for (const double w : theta) cubes += std::fabs(w) * std::fabs(w) * std::fabs(w);
  return 2.0 * c * omega / (sigma * sigma * sigma) * cubes;
}

double lp_gaussian_bound(double var1, double var2, LpBoundMode mode) {
  if (!(var1 > 0.0) || !(var2 > 0.0))
    throw std::invalid_argument("lp_gaussian_bound: variances must be positive");
  const double delta = std::fabs(var1 - var2);
  if (delta == 0.0) return 0.0;
  const double arg = 1.0 / std::sqrt(2.0 * M_PI * delta);
  const double log_term =
      mode == LpBoundMode::LambertExact ? core::lambert_w0(arg) : std::log1p(arg);
  return std::sqrt(2.0 * delta * log_term);
}

double two_sample_lp_bound(std::size_t n, std::size_t m, double var1, double var2) {
  if (n == 0 || m == 0)
    throw std::invalid_argument("two_sample_lp_bound: sample sizes must be positive");
  if (!(var1 > 0.0) || !(var2 > 0.0))
    throw std::invalid_argument("two_sample_lp_bound: variances must be positive");
  if (m > n) std::swap(n, m);
  const double delta = std::fabs(var1 - var2);
  if (n == m || delta == 0.0) return 0.0;
  const double nd = static_cast<double>(n);
  const double md = static_cast<double>(m);
  const double size_factor = 2.0 * (1.0 / md - 1.0 / nd) * delta;
  const double ratio = nd * md / std::sqrt(nd * nd - md * md);
  return std::sqrt(size_factor * std::log1p(ratio / std::sqrt(2.0 * M_PI * delta)));
}

GaussianMixtureNull mixture_null(const stats::TwoSampleModel& model) {
  model.validate();
  if (model.m > model.n)
    throw std::invalid_argument("mixture_null: requires n >= m; orient the model");
  const double nd = static_cast<double>(model.n);
  const double md = static_cast<double>(model.m);
  GaussianMixtureNull null;
  null.weights.resize(model.m + 1);
  null.component_sd.resize(model.m + 1);
  for (std::size_t j = 0; j <= model.m; ++j) {
    null.weights[j] = std::exp(core::log_hypergeom_weight(j, model.n, model.m));
    const double jd = static_cast<double>(j);
    // positive-combination form; equals var1/n + var2/m + j (1/m^2 - 1/n^2)(var1 - var2)
    const double variance = model.var1 * ((nd - jd) / (nd * nd) + jd / (md * md)) +
                            model.var2 * ((md - jd) / (md * md) + jd / (nd * nd));
    null.component_sd[j] = std::sqrt(variance);
  }
  return null;
}

double mixture_tail(const GaussianMixtureNull& null, double t) {
  if (null.weights.empty() || null.weights.size() != null.component_sd.size())
    throw std::invalid_argument("mixture_tail: malformed mixture");
  double tail = 0.0;
  for (std::size_t j = 0; j < null.weights.size(); ++j)
    tail += null.weights[j] * core::normal_cdf(-t / null.component_sd[j]);
  return tail;
}

double symmetric_kl_gaussian(double var1, double var2) {
  if (!(var1 > 0.0) || !(var2 > 0.0))
    throw std::invalid_argument("symmetric_kl_gaussian: variances must be positive");
  const double ratio = std::sqrt(var1 / var2);
  const double gap = ratio - 1.0 / ratio;
  return 0.25 * gap * gap;
}

double tv_bound(const stats::TwoSampleModel& model) {
  model.validate();
  std::size_t n = model.n;
  std::size_t m = model.m;
  double var1 = model.var1;
  double var2 = model.var2;
  if (m > n) {
    std::swap(n, m);
    std::swap(var1, var2);
  }
  if (n == m || var1 == var2) return 0.0;
  const double nd = static_cast<double>(n);
  const double md = static_cast<double>(m);
  const double scale = std::max(1.0 / (var1 + var2), 1.0 / (2.0 * var2));
  const double value =
      0.5 * std::sqrt((nd - md) / (nd + md) * std::fabs(var2 - var1) * scale);
  return std::min(1.0, value);
}

double so_n_tail(double t, double c_n, double norm_x, const SOnTailParams& params) {
  params.validate();
  if (!(c_n > 0.0)) throw std::invalid_argument("so_n_tail: Lipschitz constant must be positive");
  if (!(norm_x > 0.0)) throw std::invalid_argument("so_n_tail: norm must be positive");
  const double scale = c_n * c_n * norm_x * norm_x;
  return std::min(1.0, params.prefactor * std::exp(-params.kappa0 * t * t / scale));
}

}  // namespace groupstat::bounds
