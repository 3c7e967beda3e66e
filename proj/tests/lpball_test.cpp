#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "groupstat/core/stream.hpp"
#include "groupstat/lpball/lpball.hpp"

namespace core = groupstat::core;
namespace lpball = groupstat::lpball;

namespace {

struct MomentStats {
  double mean;
  double std_error;
};

MomentStats summarize(const std::vector<double>& values) {
  double mean = 0.0;
  for (const double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double ss = 0.0;
  for (const double v : values) ss += (v - mean) * (v - mean);
  const double n = static_cast<double>(values.size());
  return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

}  // namespace

TEST_CASE("sample_exp_power: determinism and domain guard") {
  auto a = core::derive_stream(11, 0);
  auto b = core::derive_stream(11, 0);
  for (const double p : {1.0, 2.0, 3.5}) {
    CHECK(lpball::sample_exp_power(p, a) == lpball::sample_exp_power(p, b));
  }
  CHECK_THROWS_AS(lpball::sample_exp_power(0.99, a), std::invalid_argument);
}

TEST_CASE("sample_exp_power: p=2 has Gaussian variance 1/2") {
  auto s = core::derive_stream(11, 1);
  std::vector<double> squares(100000);
  for (double& v : squares) {
    const double y = lpball::sample_exp_power(2.0, s);
    v = y * y;
  }
  const auto stats = summarize(squares);
  CHECK(std::fabs(stats.mean - 0.5) <= 3.0 * stats.std_error);
}

TEST_CASE("sample_exp_power: p=1 is Laplace with E|Y| = 1") {
  auto s = core::derive_stream(11, 2);
  std::vector<double> magnitudes(100000);
  for (double& v : magnitudes) v = std::fabs(lpball::sample_exp_power(1.0, s));
  const auto stats = summarize(magnitudes);
  CHECK(std::fabs(stats.mean - 1.0) <= 3.0 * stats.std_error);
}

TEST_CASE("direct cross-check samplers agree in distribution with the general path") {
  auto s = core::derive_stream(11, 3);
  // second moments: 1/2 for p=2, 2 for p=1
  for (const double p : {1.0, 2.0}) {
    std::vector<double> general(50000);
    std::vector<double> direct(50000);
    for (double& v : general) {
      const double y = lpball::sample_exp_power(p, s);
      v = y * y;
    }
    for (double& v : direct) {
      const double y = lpball::sample_exp_power(p, s, lpball::ExpPowerMethod::Direct);
      v = y * y;
    }
    const auto g = summarize(general);
    const auto d = summarize(direct);
    CHECK(std::fabs(g.mean - d.mean) <= 3.0 * std::hypot(g.std_error, d.std_error));
  }
  CHECK_THROWS_AS(lpball::sample_exp_power(3.0, s, lpball::ExpPowerMethod::Direct),
                  std::invalid_argument);
}

TEST_CASE("acceptance_probability: closed-form anchors stay inside the band") {
  CHECK(lpball::acceptance_probability(1.0) == doctest::Approx(M_E / 4.0).epsilon(1e-12));
  // Gamma(1.5) sqrt(2e) / 2^1.5 with Gamma(1.5) = sqrt(pi)/2
  const double expected_p2 = std::sqrt(M_PI) / 2.0 * std::sqrt(2.0 * M_E) / std::pow(2.0, 1.5);
  CHECK(lpball::acceptance_probability(2.0) == doctest::Approx(expected_p2).epsilon(1e-12));
  CHECK(lpball::acceptance_probability(2.0) == doctest::Approx(0.7305705913).epsilon(1e-9));
  for (const double p : {1.0, 2.0, 4.0, 8.0}) {
    const double value = lpball::acceptance_probability(p);
    CHECK(value >= 0.5);
    CHECK(value <= 0.75);
  }
  CHECK_THROWS_AS(lpball::acceptance_probability(0.5), std::invalid_argument);
}

TEST_CASE("observed acceptance rate tracks the formula") {
  for (const double p : {1.0, 2.0, 4.0, 8.0}) {
    auto s = core::derive_stream(11, 100 + static_cast<std::uint64_t>(p));
    const std::uint64_t proposals = 100000;
    const auto accepted = lpball::count_acceptances(p, proposals, s);
    const double rate = static_cast<double>(accepted) / static_cast<double>(proposals);
    CHECK(std::fabs(rate - lpball::acceptance_probability(p)) < 0.01);
  }
}

TEST_CASE("sample_lp_ball: membership holds for every draw") {
  auto s = core::derive_stream(12, 0);
  for (const double p : {1.0, 2.0, 4.0}) {
    for (int k = 0; k < 200; ++k) {
      const auto x = lpball::sample_lp_ball({30, p, 1.0}, s);
      double power_sum = 0.0;
      for (const double v : x) power_sum += std::pow(std::fabs(v), p);
      CHECK(power_sum <= 1.0);
    }
  }
  for (int k = 0; k < 200; ++k) {
    const auto x =
        lpball::sample_lp_ball({30, std::numeric_limits<double>::infinity(), 2.5}, s);
    for (const double v : x) CHECK(std::fabs(v) <= 2.5);
  }
}

TEST_CASE("sample_lp_ball: coordinate moments match the closed forms") {
  auto s = core::derive_stream(12, 1);
  const struct {
    std::size_t n;
    double p;
    double moment;
  } cases[] = {{2, 1.0, 1.0 / 6.0}, {10, 2.0, 1.0 / 12.0}};
  for (const auto& c : cases) {
    std::vector<double> squares(100000);
    std::vector<double> point;
    for (double& v : squares) {
      lpball::sample_lp_ball_into({c.n, c.p, 1.0}, s, point);
      v = point[0] * point[0];
    }
    const auto stats = summarize(squares);
    CHECK(std::fabs(stats.mean - c.moment) <= 3.0 * stats.std_error);
  }
}

TEST_CASE("sample_lp_ball: sign symmetry and exchangeability") {
  auto s = core::derive_stream(12, 2);
  for (const double p : {1.0, 2.0, 4.0}) {
    const std::size_t draws = 100000;
    std::vector<double> first(draws);
    std::vector<double> first_sq(draws);
    std::vector<double> second_sq(draws);
    std::vector<double> point;
    for (std::size_t k = 0; k < draws; ++k) {
      lpball::sample_lp_ball_into({5, p, 1.0}, s, point);
      first[k] = point[0];
      first_sq[k] = point[0] * point[0];
      second_sq[k] = point[1] * point[1];
    }
    const auto mean_stats = summarize(first);
    CHECK(std::fabs(mean_stats.mean) <= 4.0 * mean_stats.std_error);
    const auto m1 = summarize(first_sq);
    const auto m2 = summarize(second_sq);
    CHECK(std::fabs(m1.mean - m2.mean) <= 4.0 * std::hypot(m1.std_error, m2.std_error));
  }
}

TEST_CASE("batch sampling is independent of execution mode") {
  const auto stream = core::derive_stream(12, 3);
  const lpball::LpBallSpec spec{50, 1.5, 1.0};
  const auto serial = lpball::sample_lp_ball_batch(spec, stream, 64, groupstat::ExecMode::Serial);
  const auto openmp = lpball::sample_lp_ball_batch(spec, stream, 64, groupstat::ExecMode::OpenMP);
  CHECK(serial == openmp);
}

TEST_CASE("lp_ball_volume: interval, disk, cross-polytope") {
  CHECK(lpball::lp_ball_volume({1, 7.0, 1.0}) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(lpball::lp_ball_volume({2, 2.0, 1.0}) == doctest::Approx(M_PI).epsilon(1e-10));
  CHECK(lpball::lp_ball_volume({3, 1.0, 1.0}) == doctest::Approx(4.0 / 3.0).epsilon(1e-10));
  CHECK(lpball::lp_ball_volume({3, std::numeric_limits<double>::infinity(), 1.0}) ==
        doctest::Approx(8.0).epsilon(1e-12));
  // the log variant stays finite where the volume itself underflows
  const double log_volume = lpball::log_lp_ball_volume({400, 2.0, 1.0});
  CHECK(std::isfinite(log_volume));
  CHECK(lpball::lp_ball_volume({400, 2.0, 1.0}) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS_AS(lpball::lp_ball_volume({0, 2.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(lpball::lp_ball_volume({2, 2.0, 0.0}), std::invalid_argument);
}

TEST_CASE("lp_ball_second_moment: closed forms and the unsupported-exponent guard") {
  CHECK(lpball::lp_ball_second_moment(2, 1.0) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(lpball::lp_ball_second_moment(1, 2.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(lpball::lp_ball_second_moment(10, 2.0) == doctest::Approx(1.0 / 12.0).epsilon(1e-15));
  CHECK_THROWS_AS(lpball::lp_ball_second_moment(5, 3.0), std::invalid_argument);
}

TEST_CASE("monte carlo second moment matches the oracle across n and p") {
  auto s = core::derive_stream(12, 4);
  for (const double p : {1.0, 2.0}) {
    for (const std::size_t n : {2ul, 10ul, 50ul}) {
      const std::size_t draws = 20000;
      std::vector<double> squares(draws);
      std::vector<double> point;
      for (double& v : squares) {
        lpball::sample_lp_ball_into({n, p, 1.0}, s, point);
        v = point[0] * point[0];
      }
      const auto stats = summarize(squares);
      CHECK(std::fabs(stats.mean - lpball::lp_ball_second_moment(n, p)) <=
            3.0 * stats.std_error);
    }
  }
}
