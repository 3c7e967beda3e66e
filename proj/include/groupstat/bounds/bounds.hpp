#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "groupstat/stats/statistics.hpp"

namespace groupstat::bounds {

/// Law of the permutation-averaged difference of means for the
/// heterogeneous Gaussian two-sample model: a mixture of m+1 centered
/// Gaussians indexed by the number of swapped coordinates, with
/// hypergeometric weights.
struct GaussianMixtureNull {
  std::vector<double> weights;       ///< sums to 1
  std::vector<double> component_sd;  ///< all positive
};

/// Parameters of the SO(n) concentration tail K exp(-kappa0 t^2 / (c_n ||x||)^2).
struct SOnTailParams {
  double kappa0 = 1.0 / 72.0;
  double prefactor = 1.0;  ///< K >= 1

  void validate() const;
};

/// Sharpest widely accepted constant for the iid Berry-Esseen bound.
inline constexpr double kDefaultBerryEsseenConstant = 0.56;

/// 2 C omega sigma^-3 sum |theta_i|^3.
double berry_esseen_one_sample(double sigma, double omega, std::span<const double> theta,
                               double c = kDefaultBerryEsseenConstant);

enum class LpBoundMode {
  LambertExact,  ///< sqrt(2 Delta W(1/sqrt(2 pi Delta)))
  LogUpper,      ///< sqrt(2 Delta ln(1/sqrt(2 pi Delta) + 1))
};

/// Levy-Prokhorov bound between centered Gaussians with variance gap
/// Delta = |var1 - var2|; zero when the variances agree.
double lp_gaussian_bound(double var1, double var2, LpBoundMode mode);

/// Levy-Prokhorov bound between the sampling law of the difference of means
/// and its permutation average; zero when n = m or the variances agree.
/// Arguments are oriented internally so n > m.
double two_sample_lp_bound(std::size_t n, std::size_t m, double var1, double var2);

/// Mixture weights and component scales for the model; requires n >= m.
GaussianMixtureNull mixture_null(const stats::TwoSampleModel& model);

/// P(mixture > t) = sum_j w_j (1 - Phi(t / s_j)).
double mixture_tail(const GaussianMixtureNull& null, double t);

/// Symmetric KL divergence between centered Gaussians:
/// (1/4) (sigma1/sigma2 - sigma2/sigma1)^2.
double symmetric_kl_gaussian(double var1, double var2);

/// Total variation bound between the sampling law and the permutation
/// average, clamped to 1; zero when n = m or the variances agree.
double tv_bound(const stats::TwoSampleModel& model);

/// Concentration tail for Lipschitz statistics of Haar rotations,
/// min(1, K exp(-kappa0 t^2 / (c_n^2 ||x||^2))).
double so_n_tail(double t, double c_n, double norm_x, const SOnTailParams& params = {});

}  // namespace groupstat::bounds
