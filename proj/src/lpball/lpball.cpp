#include "groupstat/lpball/lpball.hpp"

#include <cmath>
#include <stdexcept>

#include "groupstat/core/special.hpp"
#include "groupstat/errors.hpp"

namespace groupstat::lpball {

namespace {

// Acceptance is at least 1/2 for every p >= 1, so this only trips on a
// broken stream.
constexpr std::uint64_t kRejectionGuard = 1'000'000;

void check_exponent(double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("lpball: exponent must be at least 1");
}

double proposal_half_width(double p) {
  return std::pow(2.0 / (M_E * p), 1.0 / p);
}

// One accept/reject trial; the accepted variate is written through `value`.
bool propose(double p, double half_width, core::SeededStream& stream, double& value) {
  const double u = stream.next_double();
  const double v = stream.next_uniform(-half_width, half_width);
  if (u == 0.0) return false;
  const double y = v / u;
  if (u * u <= std::exp(-std::pow(std::fabs(y), p))) {
    value = y;
    return true;
  }
  return false;
}

double sample_exp_power_rou(double p, core::SeededStream& stream) {
  const double half_width = proposal_half_width(p);
  double value = 0.0;
  for (std::uint64_t trial = 0; trial < kRejectionGuard; ++trial)
    if (propose(p, half_width, stream, value)) return value;
  throw NumericError("exp-power rejection loop exceeded its guard");
}

double sample_exp_power_direct(double p, core::SeededStream& stream) {
  if (p == 1.0) {
    // density exp(-|t|)/2: exponential magnitude with a random sign
    const double magnitude = stream.next_exponential();
    return stream.next_double() < 0.5 ? -magnitude : magnitude;
  }
  if (p == 2.0) {
    // density proportional to exp(-t^2): N(0, 1/2)
    return stream.next_gaussian() * M_SQRT1_2;
  }
  throw std::invalid_argument("direct exp-power sampler exists only for p = 1 and p = 2");
}

}  // namespace

void LpBallSpec::validate() const {
  if (dimension == 0) throw std::invalid_argument("LpBallSpec: dimension must be positive");
  if (!(exponent >= 1.0)) throw std::invalid_argument("LpBallSpec: exponent must be at least 1");
  if (!(radius > 0.0)) throw std::invalid_argument("LpBallSpec: radius must be positive");
}

double sample_exp_power(double p, core::SeededStream& stream, ExpPowerMethod method) {
  check_exponent(p);
  if (std::isinf(p)) throw std::invalid_argument("sample_exp_power: exponent must be finite");
  return method == ExpPowerMethod::RatioOfUniforms ? sample_exp_power_rou(p, stream)
                                                   : sample_exp_power_direct(p, stream);
}

double acceptance_probability(double p) {
  check_exponent(p);
  if (std::isinf(p)) throw std::invalid_argument("acceptance_probability: exponent must be finite");
  const double inv_p = 1.0 / p;
  return std::exp(core::log_gamma(1.0 + inv_p) + inv_p * (1.0 + std::log(p)) -
                  (1.0 + inv_p) * std::log(2.0));
}

std::uint64_t count_acceptances(double p, std::uint64_t proposals, core::SeededStream& stream) {
  check_exponent(p);
  const double half_width = proposal_half_width(p);
  std::uint64_t accepted = 0;
  double value = 0.0;
  for (std::uint64_t trial = 0; trial < proposals; ++trial)
    if (propose(p, half_width, stream, value)) ++accepted;
  return accepted;
}

void sample_lp_ball_into(const LpBallSpec& spec, core::SeededStream& stream,
                         std::vector<double>& out) {
  spec.validate();
  out.resize(spec.dimension);
  if (std::isinf(spec.exponent)) {
    for (double& coord : out) coord = stream.next_uniform(-spec.radius, spec.radius);
    return;
  }
  const double p = spec.exponent;
  double power_sum = 0.0;
  for (double& coord : out) {
    coord = sample_exp_power_rou(p, stream);
    power_sum += std::pow(std::fabs(coord), p);
  }
  const double exponential = stream.next_exponential();
  const double scale = spec.radius / std::pow(power_sum + exponential, 1.0 / p);
  for (double& coord : out) coord *= scale;
}

std::vector<double> sample_lp_ball(const LpBallSpec& spec, core::SeededStream& stream) {
  std::vector<double> out;
  sample_lp_ball_into(spec, stream, out);
  return out;
}

std::vector<std::vector<double>> sample_lp_ball_batch(const LpBallSpec& spec,
                                                      const core::SeededStream& stream,
                                                      std::size_t count, ExecMode mode) {
  spec.validate();
  std::vector<std::vector<double>> points(count);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (mode == ExecMode::OpenMP)
#endif
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(count); ++i) {
    auto lane = stream.substream(static_cast<std::uint64_t>(i));
    sample_lp_ball_into(spec, lane, points[static_cast<std::size_t>(i)]);
  }
  (void)mode;
  return points;
}

double log_lp_ball_volume(const LpBallSpec& spec) {
  spec.validate();
  const double n = static_cast<double>(spec.dimension);
  if (std::isinf(spec.exponent)) return n * std::log(2.0 * spec.radius);
  const double inv_p = 1.0 / spec.exponent;
  return n * std::log(2.0 * spec.radius) + n * core::log_gamma(1.0 + inv_p) -
         core::log_gamma(1.0 + n * inv_p);
}

double lp_ball_volume(const LpBallSpec& spec) { return std::exp(log_lp_ball_volume(spec)); }

double lp_ball_second_moment(std::size_t n, double p) {
  if (n == 0) throw std::invalid_argument("lp_ball_second_moment: dimension must be positive");
  const double nd = static_cast<double>(n);
  if (p == 1.0) return 2.0 / ((nd + 1.0) * (nd + 2.0));
  if (p == 2.0) return 1.0 / (nd + 2.0);
  throw std::invalid_argument("lp_ball_second_moment: closed form exists only for p = 1 and p = 2");
}

}  // namespace groupstat::lpball
