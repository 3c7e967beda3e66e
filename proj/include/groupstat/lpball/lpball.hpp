#pragma once

#include <cstdint>
#include <vector>

#include "groupstat/core/stream.hpp"
#include "groupstat/parallel.hpp"

namespace groupstat::lpball {

/// The ball { x : sum |x_i|^p <= r^p }, or { x : max |x_i| <= r } for
/// p = infinity.
struct LpBallSpec {
  std::size_t dimension = 1;
  double exponent = 2.0;  ///< p >= 1, or +infinity
  double radius = 1.0;

  void validate() const;
};

enum class ExpPowerMethod {
  RatioOfUniforms,  ///< the general sampler, any p >= 1
  Direct,           ///< cross-check path: inverse-CDF Laplace (p=1) or Gaussian (p=2)
};

/// One variate with density proportional to exp(-|t|^p), p >= 1.
double sample_exp_power(double p, core::SeededStream& stream,
                        ExpPowerMethod method = ExpPowerMethod::RatioOfUniforms);

/// Closed-form acceptance probability of the ratio-of-uniforms proposal:
/// Gamma(1+1/p) (e p)^(1/p) / 2^(1+1/p).  Lies in [0.5, 0.75] for p >= 1.
double acceptance_probability(double p);

/// Run exactly `proposals` accept/reject trials of the ratio-of-uniforms
/// scheme and return the number accepted.
std::uint64_t count_acceptances(double p, std::uint64_t proposals, core::SeededStream& stream);

/// Uniform point in the ball.  Finite p combines iid exp-power coordinates
/// with an independent exponential; p = infinity draws the coordinates
/// directly.  Membership holds for every draw by construction.
std::vector<double> sample_lp_ball(const LpBallSpec& spec, core::SeededStream& stream);
void sample_lp_ball_into(const LpBallSpec& spec, core::SeededStream& stream,
                         std::vector<double>& out);

/// `count` independent points, one per lane of `stream`; the result is
/// bit-identical for any execution mode and thread count.
std::vector<std::vector<double>> sample_lp_ball_batch(const LpBallSpec& spec,
                                                      const core::SeededStream& stream,
                                                      std::size_t count,
                                                      ExecMode mode = ExecMode::OpenMP);

/// Ball volume (2r)^n Gamma(1+1/p)^n / Gamma(1+n/p), evaluated in log space.
double lp_ball_volume(const LpBallSpec& spec);
double log_lp_ball_volume(const LpBallSpec& spec);

/// Exact coordinate second moment E X_1^2 of the uniform unit-ball
/// distribution; closed forms exist for p = 1 and p = 2.
double lp_ball_second_moment(std::size_t n, double p);

}  // namespace groupstat::lpball
