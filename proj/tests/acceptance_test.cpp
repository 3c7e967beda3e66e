// Acceptance suite: one line of output per criterion, nonzero exit when any
// criterion fails.  Tolerances and sample sizes are fixed here, not tuned.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "groupstat/bounds/bounds.hpp"
#include "groupstat/core/special.hpp"
#include "groupstat/core/stream.hpp"
#include "groupstat/experiments/experiments.hpp"
#include "groupstat/groups/elements.hpp"
#include "groupstat/groups/samplers.hpp"
#include "groupstat/lpball/lpball.hpp"
#include "groupstat/stats/models.hpp"
#include "groupstat/stats/randomization.hpp"
#include "groupstat/stats/statistics.hpp"

namespace bounds = groupstat::bounds;
namespace core = groupstat::core;
namespace experiments = groupstat::experiments;
namespace groups = groupstat::groups;
namespace lpball = groupstat::lpball;
namespace stats = groupstat::stats;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeed = 20240817;

// Each criterion draws from its own 2^32-wide region of stream indices.
constexpr std::uint64_t region(std::uint64_t criterion, std::uint64_t offset) {
  return (criterion << 32) + offset;
}

struct Summary {
  double mean;
  double std_error;
};

Summary summarize(const std::vector<double>& values) {
  double mean = 0.0;
  for (const double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double ss = 0.0;
  for (const double v : values) ss += (v - mean) * (v - mean);
  const double n = static_cast<double>(values.size());
  return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

double median_of(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

// ---------------------------------------------------------------------------

bool rotation_average_identity(std::string& detail) {
  auto stream = core::derive_stream(kSeed, region(1, 0));
  const std::size_t n = 6;
  Eigen::MatrixXd raw(n, n);
  for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(n); ++j)
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(n); ++i)
      raw(i, j) = stream.next_gaussian();
  const Eigen::MatrixXd symmetric = 0.5 * (raw + raw.transpose());
  std::vector<double> x(n);
  for (double& v : x) v = stream.next_gaussian();
  const double exact = stats::rotation_bilinear_exact(symmetric, x, x);
  const auto mc = stats::rotation_bilinear_mc(symmetric, x, x, 20000, stream.substream(0));
  const double gap = std::fabs(mc.estimate - exact);
  std::ostringstream out;
  out << "|estimate - exact| = " << gap << ", allowance 4 SE = " << 4.0 * mc.std_error;
  detail = out.str();
  return gap <= 4.0 * mc.std_error;
}

bool lp_second_moments(std::string& detail) {
  std::ostringstream out;
  bool pass = true;
  std::uint64_t lane = 0;
  for (const double p : {1.0, 2.0}) {
    for (const std::size_t n : {std::size_t{2}, std::size_t{10}, std::size_t{50}}) {
      auto stream = core::derive_stream(kSeed, region(2, lane++));
      const std::size_t draws = 100000;
      std::vector<double> squares(draws);
      std::vector<double> point;
      for (double& v : squares) {
        lpball::sample_lp_ball_into({n, p, 1.0}, stream, point);
        v = point[0] * point[0];
      }
      const auto summary = summarize(squares);
      const double target = lpball::lp_ball_second_moment(n, p);
      const bool ok = std::fabs(summary.mean - target) <= 3.0 * summary.std_error;
      pass = pass && ok;
      if (!ok) out << " fail at p=" << p << " n=" << n;
    }
  }
  if (pass) out << "all 6 (p, n) cells within 3 SE of the closed forms";
  detail = out.str();
  return pass;
}

bool acceptance_rate_formula(std::string& detail) {
  std::ostringstream out;
  bool pass = true;
  std::uint64_t lane = 0;
  for (const double p : {1.0, 2.0, 4.0, 8.0}) {
    auto stream = core::derive_stream(kSeed, region(3, lane++));
    const std::uint64_t proposals = 100000;
    const double observed = static_cast<double>(lpball::count_acceptances(p, proposals, stream)) /
                            static_cast<double>(proposals);
    const double theory = lpball::acceptance_probability(p);
    const bool ok = std::fabs(observed - theory) < 0.01 && theory >= 0.5 && theory <= 0.75;
    pass = pass && ok;
    out << (lane > 1 ? ", " : "") << "p=" << p << ": |" << observed << " - " << theory << "|";
  }
  detail = out.str();
  return pass;
}

bool haar_sampler_validity(std::string& detail) {
  bool pass = true;
  std::ostringstream out;
  for (const std::size_t n : {std::size_t{3}, std::size_t{8}}) {
    auto stream = core::derive_stream(kSeed, region(4, n));
    double worst_orth = 0.0;
    double worst_det = 0.0;
    for (int k = 0; k < 1000; ++k) {
      const auto rotation = groups::sample_rotation(n, stream);
      const Eigen::MatrixXd defect = rotation.matrix.transpose() * rotation.matrix -
                                     Eigen::MatrixXd::Identity(n, n);
      worst_orth = std::max(worst_orth, defect.cwiseAbs().maxCoeff());
      worst_det = std::max(worst_det, std::fabs(rotation.matrix.determinant() - 1.0));
    }
    pass = pass && worst_orth < 1e-10 && worst_det < 1e-10;
    out << "n=" << n << ": orth defect " << worst_orth << ", det defect " << worst_det << "; ";
  }
  auto stream = core::derive_stream(kSeed, region(4, 100));
  const std::size_t draws = 20000;
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(4, 4);
  Eigen::MatrixXd sum_sq = Eigen::MatrixXd::Zero(4, 4);
  for (std::size_t k = 0; k < draws; ++k) {
    const auto rotation = groups::sample_rotation(4, stream);
    sum += rotation.matrix;
    sum_sq += rotation.matrix.cwiseProduct(rotation.matrix);
  }
  double worst_ratio = 0.0;
  for (Eigen::Index i = 0; i < 4; ++i)
    for (Eigen::Index j = 0; j < 4; ++j) {
      const double mean = sum(i, j) / static_cast<double>(draws);
      const double variance = sum_sq(i, j) / static_cast<double>(draws) - mean * mean;
      const double std_error = std::sqrt(variance / static_cast<double>(draws));
      worst_ratio = std::max(worst_ratio, std::fabs(mean) / std_error);
    }
  out << "worst n=4 mean/SE = " << worst_ratio;
  detail = out.str();
  return pass && worst_ratio <= 4.0;
}

bool exact_randomization_size(std::string& detail) {
  const std::size_t n = 10;
  const std::size_t outer = 10000;
  const auto statistic = stats::WeightedStatistic::equal_weights(n);
  const groups::SignEnumeration enumeration(n);
  const double levels[] = {0.05, 0.1};
  std::size_t exceed_counts[2] = {0, 0};
#ifdef _OPENMP
#pragma omp parallel
#endif
  {
    std::size_t local[2] = {0, 0};
    std::vector<double> x(n);
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
    for (std::int64_t rep = 0; rep < static_cast<std::int64_t>(outer); ++rep) {
      auto stream = core::derive_stream(kSeed, region(5, static_cast<std::uint64_t>(rep)));
      for (double& v : x) v = stream.next_uniform(-1.0, 1.0);
      const double observed = statistic(x);
      for (int a = 0; a < 2; ++a) {
        const double threshold =
            stats::exact_randomization_threshold(x, statistic, enumeration, levels[a]);
        if (observed > threshold) ++local[a];
      }
    }
#ifdef _OPENMP
#pragma omp critical
#endif
    {
      exceed_counts[0] += local[0];
      exceed_counts[1] += local[1];
    }
  }
  bool pass = true;
  std::ostringstream out;
  for (int a = 0; a < 2; ++a) {
    const double frequency =
        static_cast<double>(exceed_counts[a]) / static_cast<double>(outer);
    const double limit = levels[a] + 3.0 * std::sqrt(levels[a] / static_cast<double>(outer));
    pass = pass && frequency <= limit;
    out << "alpha=" << levels[a] << ": rate " << frequency << " <= " << limit << "; ";
  }
  detail = out.str();
  return pass;
}

bool one_sample_agreement(std::string& detail) {
  const std::size_t n = 100;
  const std::size_t reps = 200;
  const std::size_t r = 2000;
  const auto statistic = stats::WeightedStatistic::equal_weights(n);
  const auto model = stats::EmgdModel::pure_gaussian();
  std::vector<double> gaps(reps);
  std::vector<int> inside(reps);
#ifdef _OPENMP
#pragma omp parallel
#endif
  {
    std::vector<double> x(n);
#ifdef _OPENMP
#pragma omp for schedule(dynamic)
#endif
    for (std::int64_t rep = 0; rep < static_cast<std::int64_t>(reps); ++rep) {
      auto stream = core::derive_stream(kSeed, region(6, static_cast<std::uint64_t>(rep)));
      for (double& v : x) v = stats::emgd_sample(model, stream);
      const double p_t = stats::one_sample_t(x).p_value;
      const auto outcome = stats::randomization_pvalue(
          x, statistic, stats::SignFlipRandomizer{}, r, stream, stats::Alternative::TwoSided,
          std::nullopt, groupstat::ExecMode::Serial);
      double mean = 0.0;
      for (const double v : x) mean += v;
      mean /= static_cast<double>(n);
      double sd = 0.0;
      double omega = 0.0;
      for (const double v : x) {
        sd += (v - mean) * (v - mean);
        omega += std::fabs(v - mean) * std::fabs(v - mean) * std::fabs(v - mean);
      }
      sd = std::sqrt(sd / static_cast<double>(n - 1));
      omega /= static_cast<double>(n);
      const double band = bounds::berry_esseen_one_sample(sd, omega, statistic.weights());
      const double p_hat = outcome.p_value;
      const double slack = 2.0 * std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(r));
      const double gap = std::fabs(p_t - outcome.p_value);
      gaps[static_cast<std::size_t>(rep)] = gap;
      inside[static_cast<std::size_t>(rep)] = gap <= band + slack ? 1 : 0;
    }
  }
  double mean_gap = 0.0;
  for (const double g : gaps) mean_gap += g;
  mean_gap /= static_cast<double>(reps);
  std::size_t covered = 0;
  for (const int flag : inside) covered += static_cast<std::size_t>(flag);
  const double coverage = static_cast<double>(covered) / static_cast<double>(reps);
  std::ostringstream out;
  out << "mean |p_t - p_rand| = " << mean_gap << " (<= 0.05), band coverage = " << coverage
      << " (>= 0.9)";
  detail = out.str();
  return mean_gap <= 0.05 && coverage >= 0.9;
}

struct TwoSampleSummary {
  std::vector<double> signed_gaps;
  std::vector<double> abs_gaps;
};

TwoSampleSummary two_sample_gaps(std::size_t n, std::size_t m, double var_small_group,
                                 std::uint64_t lane_base) {
  const std::size_t reps = 200;
  const std::size_t r = 2000;
  const stats::TwoSampleModel model{n, m, 1.0, var_small_group, 0.0};
  TwoSampleSummary summary;
  summary.signed_gaps.resize(reps);
  summary.abs_gaps.resize(reps);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (std::int64_t rep = 0; rep < static_cast<std::int64_t>(reps); ++rep) {
    auto stream = core::derive_stream(kSeed, lane_base + static_cast<std::uint64_t>(rep));
    const auto x = stats::sample_two_sample(model, stream);
    const auto mean_diff_stat = [n, m](std::span<const double> data) {
      return stats::mean_diff(data, n, m);
    };
    const double p_welch = stats::two_sample_t(x, n, m, stats::TTestVariant::Welch).p_value;
    const auto outcome = stats::randomization_pvalue(
        x, mean_diff_stat, stats::PermutationRandomizer{}, r, stream,
        stats::Alternative::TwoSided, std::nullopt, groupstat::ExecMode::Serial);
    summary.signed_gaps[static_cast<std::size_t>(rep)] = outcome.p_value - p_welch;
    summary.abs_gaps[static_cast<std::size_t>(rep)] = std::fabs(outcome.p_value - p_welch);
  }
  return summary;
}

bool two_sample_anticonservatism(std::string& detail) {
  const auto unbalanced = two_sample_gaps(200, 25, 16.0, region(7, 0));
  const double median_signed = median_of(unbalanced.signed_gaps);
  const auto balanced = two_sample_gaps(200, 200, 16.0, region(7, 1000));
  const double median_abs = median_of(balanced.abs_gaps);
  std::ostringstream out;
  out << "median(p_perm - p_welch) at m=25: " << median_signed
      << " (< 0); median |gap| at n=m=200: " << median_abs << " (<= 0.05)";
  detail = out.str();
  return median_signed < 0.0 && median_abs <= 0.05;
}

bool mixture_null_exactness(std::string& detail) {
  std::ostringstream out;
  // n = m: the mixture collapses onto the exact sampling law
  const stats::TwoSampleModel balanced{40, 40, 1.0, 9.0, 0.0};
  const auto flat = bounds::mixture_null(balanced);
  const double sd = flat.component_sd[0];
  double worst = 0.0;
  for (double t = -3.0; t <= 3.0; t += 0.05)
    worst = std::max(worst, std::fabs(bounds::mixture_tail(flat, t) -
                                      (1.0 - core::normal_cdf(t / sd))));
  const bool degenerate_ok = worst < 1e-12;
  out << "n=m degenerate gap " << worst << "; ";

  const stats::TwoSampleModel model{50, 25, 1.0, 4.0, 0.0};
  const auto null = bounds::mixture_null(model);
  const std::size_t pairs = 10000;
  const double grid[] = {-0.6, -0.2, 0.0, 0.3, 0.7};
  std::size_t hits[5] = {0, 0, 0, 0, 0};
  auto stream = core::derive_stream(kSeed, region(8, 0));
  std::vector<double> permuted;
  for (std::size_t k = 0; k < pairs; ++k) {
    const auto x = stats::sample_two_sample(model, stream);
    const auto pi = groups::sample_permutation(x.size(), stream);
    groups::apply_into(pi, x, permuted);
    const double value = stats::mean_diff(permuted, model.n, model.m);
    for (int i = 0; i < 5; ++i)
      if (value > grid[i]) ++hits[i];
  }
  bool tails_ok = true;
  for (int i = 0; i < 5; ++i) {
    const double expected = bounds::mixture_tail(null, grid[i]);
    const double observed = static_cast<double>(hits[i]) / static_cast<double>(pairs);
    const double std_error =
        std::sqrt(expected * (1.0 - expected) / static_cast<double>(pairs));
    tails_ok = tails_ok && std::fabs(observed - expected) <= 4.0 * std_error;
  }
  out << (tails_ok ? "all 5 grid tails within 4 SE" : "a grid tail missed its band");
  detail = out.str();
  return degenerate_ok && tails_ok;
}

bool bound_degeneracies(std::string& detail) {
  bool pass = bounds::tv_bound({100, 100, 1.0, 16.0, 0.0}) == 0.0 &&
              bounds::tv_bound({300, 100, 4.0, 4.0, 0.0}) == 0.0 &&
              bounds::two_sample_lp_bound(100, 100, 1.0, 16.0) == 0.0 &&
              bounds::two_sample_lp_bound(300, 100, 4.0, 4.0) == 0.0 &&
              bounds::lp_gaussian_bound(5.0, 5.0, bounds::LpBoundMode::LambertExact) == 0.0 &&
              bounds::lp_gaussian_bound(5.0, 5.0, bounds::LpBoundMode::LogUpper) == 0.0;
  for (double log_delta = std::log(1e-6); log_delta <= std::log(100.0); log_delta += 0.25) {
    const double gap = std::exp(log_delta);
    pass = pass && bounds::lp_gaussian_bound(1.0 + gap, 1.0,
                                             bounds::LpBoundMode::LambertExact) <=
                       bounds::lp_gaussian_bound(1.0 + gap, 1.0,
                                                 bounds::LpBoundMode::LogUpper) +
                           1e-15;
  }
  const double tv = bounds::tv_bound({300, 100, 1.0, 16.0, 0.0});
  pass = pass && std::fabs(tv - 0.33212) <= 1e-4;
  std::ostringstream out;
  out << "exact zeros hold, lambert <= log on the grid, tv(300,100,1,16) = " << tv;
  detail = out.str();
  return pass;
}

bool lil_envelope(std::string& detail) {
  const std::size_t vectors = 200;
  std::vector<double> ratios(vectors);
#ifdef _OPENMP
#pragma omp parallel
#endif
  {
    std::vector<double> point;
#ifdef _OPENMP
#pragma omp for schedule(dynamic)
#endif
    for (std::int64_t k = 0; k < static_cast<std::int64_t>(vectors); ++k) {
      auto stream = core::derive_stream(kSeed, region(10, static_cast<std::uint64_t>(k)));
      lpball::sample_lp_ball_into({10000, 2.0, 1.0}, stream, point);
      ratios[static_cast<std::size_t>(k)] = stats::lil_ratio(point, 2.0);
    }
  }
  std::sort(ratios.begin(), ratios.end());
  const double q1 = ratios[vectors / 4];
  const double q2 = median_of(ratios);
  const double q3 = ratios[3 * vectors / 4];
  const double top = ratios.back();
  std::ostringstream out;
  out << "quartiles (" << q1 << ", " << q2 << ", " << q3 << ") < 1, max " << top << " < 1.5";
  detail = out.str();
  return q1 < 1.0 && q2 < 1.0 && q3 < 1.0 && top < 1.5;
}

bool csv_determinism(std::string& detail) {
  const fs::path base = fs::temp_directory_path() / "groupstat-acceptance";
  fs::remove_all(base);
  bool pass = true;
  std::size_t kinds_checked = 0;
  for (const experiments::Kind kind :
       {experiments::Kind::LilBall, experiments::Kind::OneSample, experiments::Kind::TwoSample, experiments::Kind::CdfCompare,
        experiments::Kind::AcceptRate, experiments::Kind::RotBilinear}) {
    experiments::ExperimentConfig cfg;
    cfg.kind = kind;
    cfg.seed = 77;
    switch (kind) {
      case experiments::Kind::LilBall:
        cfg.p_grid = {1.0, std::numeric_limits<double>::infinity()};
        cfg.n_grid = {10, 100};
        cfg.reps = 20;
        break;
      case experiments::Kind::OneSample:
        cfg.lambda_grid = {std::numeric_limits<double>::infinity(), 0.1};
        cfg.n = 30;
        cfg.reps = 10;
        cfg.r = 200;
        break;
      case experiments::Kind::TwoSample:
        cfg.m_grid = {10, 25};
        cfg.n = 40;
        cfg.reps = 10;
        cfg.r = 200;
        break;
      case experiments::Kind::CdfCompare:
        cfg.n = 40;
        cfg.m = 20;
        cfg.reps = 500;
        break;
      case experiments::Kind::AcceptRate:
        cfg.p_grid = {1.0, 3.0};
        cfg.trials = 20000;
        break;
      case experiments::Kind::RotBilinear:
        cfg.n_grid = {4};
        cfg.reps = 3;
        cfg.rotations = 500;
        break;
    }
    std::string contents[2];
    for (int pass_index = 0; pass_index < 2; ++pass_index) {
      cfg.out_dir = base / (experiments::kind_name(kind) + "-" + std::to_string(pass_index));
      const auto written = experiments::run(cfg);
      std::ifstream in(written[0], std::ios::binary);
      std::ostringstream buffer;
      buffer << in.rdbuf();
      contents[pass_index] = buffer.str();
    }
    pass = pass && !contents[0].empty() && contents[0] == contents[1];
    ++kinds_checked;
  }
  std::ostringstream out;
  out << kinds_checked << " kinds re-run byte-identically";
  detail = out.str();
  return pass;
}

}  // namespace

int main() {
  const struct {
    const char* name;
    bool (*run)(std::string&);
  } criteria[] = {
      {"rotation-average identity at n=6", rotation_average_identity},
      {"lp-ball second-moment oracles", lp_second_moments},
      {"ratio-of-uniforms acceptance formula", acceptance_rate_formula},
      {"Haar rotation sampler validity", haar_sampler_validity},
      {"exact sign-flip randomization size", exact_randomization_size},
      {"one-sample t vs randomization agreement", one_sample_agreement},
      {"two-sample permutation anti-conservatism", two_sample_anticonservatism},
      {"mixture null exactness", mixture_null_exactness},
      {"bound degeneracies and ordering", bound_degeneracies},
      {"finite-n iterated-logarithm envelope", lil_envelope},
      {"experiment CSV determinism", csv_determinism},
  };

  int failures = 0;
  int index = 0;
  for (const auto& criterion : criteria) {
    ++index;
    std::string detail;
    bool ok = false;
    try {
      ok = criterion.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    std::printf("%s criterion %2d: %s (%s)\n", ok ? "PASS" : "FAIL", index, criterion.name,
                detail.c_str());
    if (!ok) ++failures;
  }
  if (failures != 0) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
