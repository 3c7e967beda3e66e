#include "groupstat/experiments/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>

#include "csv.hpp"
#include "groupstat/bounds/bounds.hpp"
#include "groupstat/core/stream.hpp"
#include "groupstat/lpball/lpball.hpp"
#include "groupstat/stats/models.hpp"
#include "groupstat/stats/randomization.hpp"
#include "groupstat/stats/statistics.hpp"

namespace groupstat::experiments {

namespace {

using core::SeededStream;

constexpr std::size_t kCellLimit = 0xFFFFFFFFull;

// Stream for replicate `rep` of grid cell `cell`.
SeededStream cell_stream(std::uint64_t seed, std::size_t cell, std::size_t rep) {
  return core::derive_stream(seed, (static_cast<std::uint64_t>(cell) << 32) |
                                       static_cast<std::uint64_t>(rep));
}

void check_grid_sizes(std::size_t cells, std::size_t reps) {
  if (cells == 0) throw std::invalid_argument("experiment: grid must be nonempty");
  if (reps == 0) throw std::invalid_argument("experiment: reps must be positive");
  if (cells > kCellLimit || reps > kCellLimit)
    throw std::invalid_argument("experiment: grid or replicate count too large");
}

struct Normalized {
  ExperimentConfig cfg;
  ExecMode outer_mode;  // Serial when the config asks for the reference path
};

Normalized normalize(const ExperimentConfig& config) {
  Normalized norm{config, config.exec};
  ExperimentConfig& cfg = norm.cfg;
  switch (cfg.kind) {
    case Kind::LilBall:
      if (cfg.p_grid.empty()) cfg.p_grid = {1.0, 2.0, std::numeric_limits<double>::infinity()};
      if (cfg.n_grid.empty()) cfg.n_grid = {10, 100, 1000, 10000, 100000};
      if (cfg.reps == 0) cfg.reps = 1000;
      break;
    case Kind::OneSample:
      if (cfg.lambda_grid.empty())
        cfg.lambda_grid = {std::numeric_limits<double>::infinity(), 10.0, 1.0, 0.1, 0.01, 0.001};
      if (cfg.n == 0) cfg.n = 100;
      if (cfg.reps == 0) cfg.reps = 200;
      break;
    case Kind::TwoSample:
      if (cfg.m_grid.empty()) cfg.m_grid = {25, 50, 100, 200};
      if (cfg.n == 0) cfg.n = 200;
      if (cfg.reps == 0) cfg.reps = 200;
      break;
    case Kind::CdfCompare:
      if (cfg.n == 0) cfg.n = 200;
      if (cfg.m == 0) cfg.m = 100;
      if (cfg.reps == 0) cfg.reps = 200;
      break;
    case Kind::AcceptRate:
      if (cfg.p_grid.empty()) cfg.p_grid = {1.0, 2.0, 4.0, 8.0};
      if (cfg.reps == 0) cfg.reps = 1;
      break;
    case Kind::RotBilinear:
      if (cfg.n_grid.empty()) cfg.n_grid = {6};
      if (cfg.reps == 0) cfg.reps = 10;
      break;
  }
  return norm;
}

double sample_sd(std::span<const double> x) {
  double mean = 0.0;
  for (const double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  double ss = 0.0;
  for (const double v : x) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / (static_cast<double>(x.size()) - 1.0));
}

double sample_abs_third_moment(std::span<const double> x) {
  double mean = 0.0;
  for (const double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  double sum = 0.0;
  for (const double v : x) {
    const double d = std::fabs(v - mean);
    sum += d * d * d;
  }
  return sum / static_cast<double>(x.size());
}

std::filesystem::path output_path(const ExperimentConfig& cfg) {
  std::filesystem::create_directories(cfg.out_dir);
  return cfg.out_dir / (kind_name(cfg.kind) + ".csv");
}

// ---------------------------------------------------------------- lil-ball

std::filesystem::path run_lil_ball(const ExperimentConfig& cfg, ExecMode outer) {
  for (const double p : cfg.p_grid)
    if (!(p >= 1.0)) throw std::invalid_argument("lil-ball: p must be at least 1");
  for (const std::size_t n : cfg.n_grid)
    if (n < 3) throw std::invalid_argument("lil-ball: dimensions must be at least 3");
  const std::size_t cells = cfg.p_grid.size() * cfg.n_grid.size();
  check_grid_sizes(cells, cfg.reps);

  const std::size_t total = cells * cfg.reps;
  std::vector<double> ratios(total);
#ifdef _OPENMP
#pragma omp parallel if (outer == ExecMode::OpenMP)
#endif
  {
    std::vector<double> point;
#ifdef _OPENMP
#pragma omp for schedule(dynamic)
#endif
    for (std::int64_t idx = 0; idx < static_cast<std::int64_t>(total); ++idx) {
      const std::size_t cell = static_cast<std::size_t>(idx) / cfg.reps;
      const std::size_t rep = static_cast<std::size_t>(idx) % cfg.reps;
      const double p = cfg.p_grid[cell / cfg.n_grid.size()];
      const std::size_t n = cfg.n_grid[cell % cfg.n_grid.size()];
      auto stream = cell_stream(cfg.seed, cell, rep);
      lpball::sample_lp_ball_into({n, p, 1.0}, stream, point);
      ratios[static_cast<std::size_t>(idx)] = stats::lil_ratio(point, p);
    }
  }
  (void)outer;

  detail::CsvBuilder csv;
  csv.row("p", "n", "rep", "ratio");
  for (std::size_t cell = 0; cell < cells; ++cell) {
    const double p = cfg.p_grid[cell / cfg.n_grid.size()];
    const std::size_t n = cfg.n_grid[cell % cfg.n_grid.size()];
    for (std::size_t rep = 0; rep < cfg.reps; ++rep)
      csv.row(p, n, rep, ratios[cell * cfg.reps + rep]);
  }
  const auto path = output_path(cfg);
  detail::write_file(path, csv.content());
  return path;
}

// --------------------------------------------------------------- one-sample

struct OneSampleRow {
  double p_t;
  double p_rand;
  double be_bound;
};

std::filesystem::path run_one_sample(const ExperimentConfig& cfg, ExecMode outer) {
  if (cfg.n < 2) throw std::invalid_argument("one-sample: n must be at least 2");
  if (cfg.r == 0) throw std::invalid_argument("one-sample: r must be positive");
  for (const double rate : cfg.lambda_grid)
    if (!(rate > 0.0)) throw std::invalid_argument("one-sample: lambda must be positive");
  const std::size_t cells = cfg.lambda_grid.size();
  check_grid_sizes(cells, cfg.reps);

  const auto statistic = stats::WeightedStatistic::equal_weights(cfg.n);
  // Model moments are per cell; compute the quadrature once when requested.
  std::vector<double> cell_sigma(cells, 0.0);
  std::vector<double> cell_omega(cells, 0.0);
  if (cfg.analytic_moments)
    for (std::size_t cell = 0; cell < cells; ++cell) {
      const double rate = cfg.lambda_grid[cell];
      const auto model = std::isinf(rate) ? stats::EmgdModel::pure_gaussian()
                                          : stats::EmgdModel::with_rate(rate);
      cell_sigma[cell] = std::sqrt(stats::emgd_variance(model));
      cell_omega[cell] = stats::emgd_abs_third_moment(model);
    }
  const std::size_t total = cells * cfg.reps;
  std::vector<OneSampleRow> rows(total);
#ifdef _OPENMP
#pragma omp parallel if (outer == ExecMode::OpenMP)
#endif
  {
    std::vector<double> x(cfg.n);
#ifdef _OPENMP
#pragma omp for schedule(dynamic)
#endif
    for (std::int64_t idx = 0; idx < static_cast<std::int64_t>(total); ++idx) {
      const std::size_t cell = static_cast<std::size_t>(idx) / cfg.reps;
      const std::size_t rep = static_cast<std::size_t>(idx) % cfg.reps;
      const double rate = cfg.lambda_grid[cell];
      const auto model = std::isinf(rate) ? stats::EmgdModel::pure_gaussian()
                                          : stats::EmgdModel::with_rate(rate);
      auto stream = cell_stream(cfg.seed, cell, rep);
      for (double& v : x) v = stats::emgd_sample(model, stream);
      const auto outcome =
          stats::randomization_pvalue(x, statistic, stats::SignFlipRandomizer{}, cfg.r, stream,
                                      stats::Alternative::TwoSided, std::nullopt,
                                      ExecMode::Serial);
      const double sigma = cfg.analytic_moments ? cell_sigma[cell] : sample_sd(x);
      const double omega = cfg.analytic_moments ? cell_omega[cell] : sample_abs_third_moment(x);
      rows[static_cast<std::size_t>(idx)] = {
          stats::one_sample_t(x).p_value, outcome.p_value,
          bounds::berry_esseen_one_sample(sigma, omega, statistic.weights())};
    }
  }
  (void)outer;

  detail::CsvBuilder csv;
  csv.row("lambda", "rep", "p_t", "p_rand", "be_bound");
  for (std::size_t cell = 0; cell < cells; ++cell)
    for (std::size_t rep = 0; rep < cfg.reps; ++rep) {
      const auto& row = rows[cell * cfg.reps + rep];
      csv.row(cfg.lambda_grid[cell], rep, row.p_t, row.p_rand, row.be_bound);
    }
  const auto path = output_path(cfg);
  detail::write_file(path, csv.content());
  return path;
}

// --------------------------------------------------------------- two-sample

struct TwoSampleRow {
  double p_welch;
  double p_perm;
};

std::filesystem::path run_two_sample(const ExperimentConfig& cfg, ExecMode outer) {
  if (cfg.n < 2) throw std::invalid_argument("two-sample: n must be at least 2");
  if (cfg.r == 0) throw std::invalid_argument("two-sample: r must be positive");
  for (const std::size_t m : cfg.m_grid)
    if (m < 2) throw std::invalid_argument("two-sample: m must be at least 2");
  const std::size_t cells = cfg.m_grid.size();
  check_grid_sizes(cells, cfg.reps);

  const std::size_t total = cells * cfg.reps;
  std::vector<TwoSampleRow> rows(total);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (outer == ExecMode::OpenMP)
#endif
  for (std::int64_t idx = 0; idx < static_cast<std::int64_t>(total); ++idx) {
    const std::size_t cell = static_cast<std::size_t>(idx) / cfg.reps;
    const std::size_t rep = static_cast<std::size_t>(idx) % cfg.reps;
    const std::size_t m = cfg.m_grid[cell];
    const stats::TwoSampleModel model{cfg.n, m, cfg.var1, cfg.var2, 0.0};
    auto stream = cell_stream(cfg.seed, cell, rep);
    const auto x = stats::sample_two_sample(model, stream);
    const auto mean_diff_stat = [n = cfg.n, m](std::span<const double> data) {
      return stats::mean_diff(data, n, m);
    };
    const auto outcome = stats::randomization_pvalue(
        x, mean_diff_stat, stats::PermutationRandomizer{}, cfg.r, stream,
        stats::Alternative::TwoSided, std::nullopt, ExecMode::Serial);
    rows[static_cast<std::size_t>(idx)] = {
        stats::two_sample_t(x, cfg.n, m, stats::TTestVariant::Welch).p_value, outcome.p_value};
  }
  (void)outer;

  detail::CsvBuilder csv;
  csv.row("m", "rep", "p_welch", "p_perm", "tv_bound");
  for (std::size_t cell = 0; cell < cells; ++cell) {
    const stats::TwoSampleModel model{cfg.n, cfg.m_grid[cell], cfg.var1, cfg.var2, 0.0};
    const double tv = bounds::tv_bound(model);
    for (std::size_t rep = 0; rep < cfg.reps; ++rep) {
      const auto& row = rows[cell * cfg.reps + rep];
      csv.row(cfg.m_grid[cell], rep, row.p_welch, row.p_perm, tv);
    }
  }
  const auto path = output_path(cfg);
  detail::write_file(path, csv.content());
  return path;
}

// -------------------------------------------------------------- cdf-compare

std::filesystem::path run_cdf_compare(const ExperimentConfig& cfg, ExecMode outer) {
  if (cfg.n == 0 || cfg.m == 0)
    throw std::invalid_argument("cdf-compare: sample sizes must be positive");
  if (cfg.m > cfg.n)
    throw std::invalid_argument("cdf-compare: requires n >= m");
  check_grid_sizes(1, cfg.reps);
  const stats::TwoSampleModel model{cfg.n, cfg.m, cfg.var1, cfg.var2, 0.0};
  const auto mixture = bounds::mixture_null(model);

  std::vector<double> statistics(cfg.reps);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (outer == ExecMode::OpenMP)
#endif
  for (std::int64_t rep = 0; rep < static_cast<std::int64_t>(cfg.reps); ++rep) {
    auto stream = cell_stream(cfg.seed, 0, static_cast<std::size_t>(rep));
    const auto x = stats::sample_two_sample(model, stream);
    statistics[static_cast<std::size_t>(rep)] = stats::mean_diff(x, cfg.n, cfg.m);
  }
  (void)outer;
  std::sort(statistics.begin(), statistics.end());

  std::vector<double> grid = cfg.t_grid;
  if (grid.empty()) {
    const double spread =
        4.0 * *std::max_element(mixture.component_sd.begin(), mixture.component_sd.end());
    constexpr std::size_t kPoints = 81;
    grid.resize(kPoints);
    for (std::size_t i = 0; i < kPoints; ++i)
      grid[i] = -spread + 2.0 * spread * static_cast<double>(i) / (kPoints - 1);
  }

  const double band = bounds::two_sample_lp_bound(cfg.n, cfg.m, cfg.var1, cfg.var2);
  detail::CsvBuilder csv;
  csv.row("t", "F_empirical", "F_mixture", "lp_band");
  for (const double t : grid) {
    const auto below =
        std::upper_bound(statistics.begin(), statistics.end(), t) - statistics.begin();
    const double empirical = static_cast<double>(below) / static_cast<double>(cfg.reps);
    csv.row(t, empirical, 1.0 - bounds::mixture_tail(mixture, t), band);
  }
  const auto path = output_path(cfg);
  detail::write_file(path, csv.content());
  return path;
}

// -------------------------------------------------------------- accept-rate

std::filesystem::path run_accept_rate(const ExperimentConfig& cfg, ExecMode outer) {
  for (const double p : cfg.p_grid)
    if (!(p >= 1.0) || std::isinf(p))
      throw std::invalid_argument("accept-rate: p must be finite and at least 1");
  if (cfg.trials == 0) throw std::invalid_argument("accept-rate: trials must be positive");
  const std::size_t cells = cfg.p_grid.size();
  check_grid_sizes(cells, 1);

  std::vector<std::uint64_t> accepted(cells);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (outer == ExecMode::OpenMP)
#endif
  for (std::int64_t cell = 0; cell < static_cast<std::int64_t>(cells); ++cell) {
    auto stream = cell_stream(cfg.seed, static_cast<std::size_t>(cell), 0);
    accepted[static_cast<std::size_t>(cell)] =
        lpball::count_acceptances(cfg.p_grid[static_cast<std::size_t>(cell)], cfg.trials, stream);
  }
  (void)outer;

  detail::CsvBuilder csv;
  csv.row("p", "trials", "accept_rate", "theoretical");
  for (std::size_t cell = 0; cell < cells; ++cell) {
    const double p = cfg.p_grid[cell];
    const double rate =
        static_cast<double>(accepted[cell]) / static_cast<double>(cfg.trials);
    csv.row(p, cfg.trials, rate, lpball::acceptance_probability(p));
  }
  const auto path = output_path(cfg);
  detail::write_file(path, csv.content());
  return path;
}

// -------------------------------------------------------------- rot-bilinear

std::filesystem::path run_rot_bilinear(const ExperimentConfig& cfg, ExecMode mode) {
  for (const std::size_t n : cfg.n_grid)
    if (n == 0) throw std::invalid_argument("rot-bilinear: dimensions must be positive");
  if (cfg.rotations < 2)
    throw std::invalid_argument("rot-bilinear: need at least 2 rotations");
  check_grid_sizes(cfg.n_grid.size(), cfg.reps);

  detail::CsvBuilder csv;
  csv.row("n", "rep", "estimate", "exact", "std_error");
  // A and x are drawn per replicate; the Monte Carlo inner loop carries the
  // parallelism.
  for (std::size_t cell = 0; cell < cfg.n_grid.size(); ++cell) {
    const std::size_t n = cfg.n_grid[cell];
    const auto dim = static_cast<Eigen::Index>(n);
    for (std::size_t rep = 0; rep < cfg.reps; ++rep) {
      auto stream = cell_stream(cfg.seed, cell, rep);
      Eigen::MatrixXd raw(dim, dim);
      for (Eigen::Index j = 0; j < dim; ++j)
        for (Eigen::Index i = 0; i < dim; ++i) raw(i, j) = stream.next_gaussian();
      const Eigen::MatrixXd symmetric = 0.5 * (raw + raw.transpose());
      std::vector<double> x(n);
      for (double& v : x) v = stream.next_gaussian();
      const double exact = stats::rotation_bilinear_exact(symmetric, x, x);
      const auto mc = stats::rotation_bilinear_mc(symmetric, x, x, cfg.rotations, stream, mode);
      csv.row(n, rep, mc.estimate, exact, mc.std_error);
    }
  }
  const auto path = output_path(cfg);
  detail::write_file(path, csv.content());
  return path;
}

}  // namespace

Kind kind_from_name(const std::string& name) {
  if (name == "lil-ball") return Kind::LilBall;
  if (name == "one-sample") return Kind::OneSample;
  if (name == "two-sample") return Kind::TwoSample;
  if (name == "cdf-compare") return Kind::CdfCompare;
  if (name == "accept-rate") return Kind::AcceptRate;
  if (name == "rot-bilinear") return Kind::RotBilinear;
  throw std::invalid_argument("unknown experiment kind: " + name);
}

std::string kind_name(Kind kind) {
  switch (kind) {
    case Kind::LilBall:
      return "lil-ball";
    case Kind::OneSample:
      return "one-sample";
    case Kind::TwoSample:
      return "two-sample";
    case Kind::CdfCompare:
      return "cdf-compare";
    case Kind::AcceptRate:
      return "accept-rate";
    case Kind::RotBilinear:
      return "rot-bilinear";
  }
  throw std::invalid_argument("unknown experiment kind");
}

std::vector<std::filesystem::path> run(const ExperimentConfig& config) {
  const Normalized norm = normalize(config);
  switch (norm.cfg.kind) {
    case Kind::LilBall:
      return {run_lil_ball(norm.cfg, norm.outer_mode)};
    case Kind::OneSample:
      return {run_one_sample(norm.cfg, norm.outer_mode)};
    case Kind::TwoSample:
      return {run_two_sample(norm.cfg, norm.outer_mode)};
    case Kind::CdfCompare:
      return {run_cdf_compare(norm.cfg, norm.outer_mode)};
    case Kind::AcceptRate:
      return {run_accept_rate(norm.cfg, norm.outer_mode)};
    case Kind::RotBilinear:
      return {run_rot_bilinear(norm.cfg, norm.outer_mode)};
  }
  throw std::invalid_argument("unknown experiment kind");
}

}  // namespace groupstat::experiments
