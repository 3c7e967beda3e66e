#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>

#include "groupstat/core/stream.hpp"
#include "groupstat/parallel.hpp"

namespace groupstat::stats {

/// Centered exponentially modified Gaussian: N(0,1) + Exp(rate) - 1/rate,
/// which has mean exactly zero.  The pure-Gaussian limit is a distinct
/// state rather than a sentinel rate.
class EmgdModel {
 public:
  static EmgdModel pure_gaussian() { return EmgdModel(); }
  static EmgdModel with_rate(double rate);

  bool has_exponential() const { return rate_.has_value(); }

  /// Rate of the exponential part; finite-rate models only.
  double rate() const;

 private:
  EmgdModel() = default;
  std::optional<double> rate_;
};

double emgd_sample(const EmgdModel& model, core::SeededStream& stream);

/// Var Z = 1 + 1/rate^2 (1 in the pure-Gaussian case).
double emgd_variance(const EmgdModel& model);

/// E|Z|^3; closed form for the pure Gaussian, adaptive quadrature of the
/// density otherwise.
double emgd_abs_third_moment(const EmgdModel& model);

/// |sum x_i| / (2^(1/2+1/p) n^(1/2-1/p) sqrt(log log n)) for n >= 3;
/// p >= 1 or +infinity, natural logs throughout.
double lil_ratio(std::span<const double> x, double p);

/// Haar average of (Mx)^T A (My) over SO(n): (tr A / n) <x, y>.
/// A must be symmetric to 1e-10.
double rotation_bilinear_exact(const Eigen::MatrixXd& a, std::span<const double> x,
                               std::span<const double> y);

struct MonteCarloEstimate {
  double estimate;
  double std_error;
};

/// Sample mean and standard error of (Mx)^T A (My) over `draws` Haar
/// rotations; draw k uses substream k of `stream`.
MonteCarloEstimate rotation_bilinear_mc(const Eigen::MatrixXd& a, std::span<const double> x,
                                        std::span<const double> y, std::size_t draws,
                                        core::SeededStream stream,
                                        ExecMode mode = ExecMode::OpenMP);

}  // namespace groupstat::stats
