// Wall-clock comparison of the serial reference path against the OpenMP
// path for the Monte Carlo kernels.  Both paths must agree bit for bit;
// any mismatch is reported and fails the run.

#include <Eigen/Dense>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "groupstat/core/stream.hpp"
#include "groupstat/lpball/lpball.hpp"
#include "groupstat/parallel.hpp"
#include "groupstat/stats/models.hpp"
#include "groupstat/stats/randomization.hpp"
#include "groupstat/stats/statistics.hpp"

namespace {

using groupstat::ExecMode;
namespace core = groupstat::core;
namespace stats = groupstat::stats;
namespace lpball = groupstat::lpball;

double time_ms(const std::function<void()>& work) {
  const auto start = std::chrono::steady_clock::now();
  work();
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(stop - start).count();
}

struct BenchCase {
  std::string name;
  std::function<double(ExecMode)> run;  // returns a checksum of the result
};

}  // namespace

int main() {
  std::vector<BenchCase> cases;

  cases.push_back({"sign-flip p-value (n=200, r=50000)", [](ExecMode mode) {
                     auto stream = core::derive_stream(7, 0);
                     std::vector<double> x(200);
                     for (double& v : x) v = stream.next_gaussian();
                     const auto stat = stats::WeightedStatistic::equal_weights(x.size());
                     return stats::randomization_pvalue(x, stat, stats::SignFlipRandomizer{},
                                                        50000, stream.substream(1),
                                                        stats::Alternative::TwoSided,
                                                        std::nullopt, mode)
                         .p_value;
                   }});

  cases.push_back({"permutation p-value (n+m=400, r=50000)", [](ExecMode mode) {
                     auto stream = core::derive_stream(7, 1);
                     const stats::TwoSampleModel model{200, 200, 1.0, 16.0, 0.0};
                     const auto x = stats::sample_two_sample(model, stream);
                     const auto stat = [](std::span<const double> data) {
                       return stats::mean_diff(data, 200, 200);
                     };
                     return stats::randomization_pvalue(x, stat, stats::PermutationRandomizer{},
                                                        50000, stream.substream(1),
                                                        stats::Alternative::TwoSided,
                                                        std::nullopt, mode)
                         .p_value;
                   }});

  cases.push_back({"rotation bilinear MC (n=8, N=20000)", [](ExecMode mode) {
                     auto stream = core::derive_stream(7, 2);
                     Eigen::MatrixXd raw(8, 8);
                     for (Eigen::Index j = 0; j < 8; ++j)
                       for (Eigen::Index i = 0; i < 8; ++i) raw(i, j) = stream.next_gaussian();
                     const Eigen::MatrixXd a = 0.5 * (raw + raw.transpose());
                     std::vector<double> x(8);
                     for (double& v : x) v = stream.next_gaussian();
                     return stats::rotation_bilinear_mc(a, x, x, 20000, stream.substream(1), mode)
                         .estimate;
                   }});

  cases.push_back({"lp-ball batch (p=2, n=1000, 5000 points)", [](ExecMode mode) {
                     const auto stream = core::derive_stream(7, 3);
                     const auto points =
                         lpball::sample_lp_ball_batch({1000, 2.0, 1.0}, stream, 5000, mode);
                     double checksum = 0.0;
                     for (const auto& point : points) checksum += point.front();
                     return checksum;
                   }});

  std::printf("threads available: %d\n\n", groupstat::max_threads());
  std::printf("%-45s %12s %12s %9s\n", "kernel", "serial ms", "openmp ms", "speedup");

  bool all_equal = true;
  for (const auto& bench : cases) {
    double serial_result = 0.0;
    double openmp_result = 0.0;
    const double serial_ms = time_ms([&] { serial_result = bench.run(ExecMode::Serial); });
    const double openmp_ms = time_ms([&] { openmp_result = bench.run(ExecMode::OpenMP); });
    const bool equal = serial_result == openmp_result;
    all_equal = all_equal && equal;
    std::printf("%-45s %12.1f %12.1f %8.2fx%s\n", bench.name.c_str(), serial_ms, openmp_ms,
                serial_ms / openmp_ms, equal ? "" : "  RESULT MISMATCH");
  }

  if (!all_equal) {
    std::fprintf(stderr, "\nserial and OpenMP paths disagree\n");
    return 1;
  }
  return 0;
}
