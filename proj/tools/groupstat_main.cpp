#include <CLI11.hpp>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <string>
#include <vector>

#include "groupstat/errors.hpp"
#include "groupstat/experiments/experiments.hpp"

namespace {

namespace exp = groupstat::experiments;

// Exit codes: 0 success, 2 usage/config error, 3 I/O error, 4 numeric failure.
constexpr int kUsageError = 2;
constexpr int kIoError = 3;
constexpr int kNumericError = 4;

struct KindSpec {
  const char* name;
  const char* description;
};

constexpr KindSpec kKinds[] = {
    {"lil-ball", "iterated-logarithm ratios for uniform lp-ball points"},
    {"one-sample", "t-test vs sign-flip randomization p-values under the EMGD"},
    {"two-sample", "Welch vs permutation p-values under unequal variances"},
    {"cdf-compare", "empirical CDF of the mean difference vs the mixture null"},
    {"accept-rate", "observed vs theoretical ratio-of-uniforms acceptance"},
    {"rot-bilinear", "Monte Carlo vs exact rotation-averaged bilinear form"},
};

void add_common_options(CLI::App* sub, exp::ExperimentConfig& cfg, std::string& out_dir,
                        std::string& config_path) {
  sub->add_option("--seed", cfg.seed, "master seed");
  sub->add_option("--reps", cfg.reps, "replications per grid cell");
  sub->add_option("--out", out_dir, "output directory");
  sub->add_flag_callback(
      "--serial", [&cfg] { cfg.exec = groupstat::ExecMode::Serial; },
      "run the serial reference path");
  sub->add_option("--config", config_path, "flat key=value file mirroring the flags");
}

// Applies a flat key=value file to the subcommand's options.  Values given
// on the command line keep precedence; unknown keys are config errors.
void apply_config_file(CLI::App* sub, const std::string& path) {
  const auto items = CLI::ConfigTOML{}.from_file(path);
  for (const auto& item : items) {
    if (!item.parents.empty())
      throw std::invalid_argument("config file must be flat: unexpected section for key '" +
                                  item.name + "'");
    CLI::Option* option = sub->get_option_no_throw("--" + item.name);
    if (option == nullptr || item.name == "config")
      throw std::invalid_argument("config key '" + item.name + "' is not a flag of '" +
                                  sub->get_name() + "'");
    if (option->count() > 0) continue;
    for (const auto& input : item.inputs) option->add_result(input);
    option->run_callback();
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Experiment CLI: randomization tests, Haar sampling, and lp-ball studies"};
  app.require_subcommand(1);

  exp::ExperimentConfig cfg;
  std::string out_dir = "results";
  std::string config_path;

  for (const auto& kind : kKinds) {
    CLI::App* sub = app.add_subcommand(kind.name, kind.description);
    add_common_options(sub, cfg, out_dir, config_path);
    const std::string name = kind.name;
    if (name == "lil-ball") {
      sub->add_option("--p", cfg.p_grid, "ball exponents (inf allowed)");
      sub->add_option("--n", cfg.n_grid, "ball dimensions");
    } else if (name == "one-sample") {
      sub->add_option("--n", cfg.n, "sample size");
      sub->add_option("--r", cfg.r, "randomization replicates");
      sub->add_option("--lambda", cfg.lambda_grid, "exponential rates (inf for pure Gaussian)");
      sub->add_flag("--analytic-moments", cfg.analytic_moments,
                    "use model moments in the Berry-Esseen band");
    } else if (name == "two-sample") {
      sub->add_option("--n", cfg.n, "first-group size");
      sub->add_option("--m", cfg.m_grid, "second-group sizes");
      sub->add_option("--r", cfg.r, "randomization replicates");
      sub->add_option("--var1", cfg.var1, "first-group variance");
      sub->add_option("--var2", cfg.var2, "second-group variance");
    } else if (name == "cdf-compare") {
      sub->add_option("--n", cfg.n, "first-group size");
      sub->add_option("--m", cfg.m, "second-group size");
      sub->add_option("--var1", cfg.var1, "first-group variance");
      sub->add_option("--var2", cfg.var2, "second-group variance");
      sub->add_option("--t-grid", cfg.t_grid, "evaluation points (default: auto)");
    } else if (name == "accept-rate") {
      sub->add_option("--p", cfg.p_grid, "exponents");
      sub->add_option("--trials", cfg.trials, "proposals per exponent");
    } else if (name == "rot-bilinear") {
      sub->add_option("--n", cfg.n_grid, "dimensions");
      sub->add_option("--rotations", cfg.rotations, "Monte Carlo rotations");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  CLI::App* sub = app.get_subcommands().front();
  if (!config_path.empty()) {
    try {
      apply_config_file(sub, config_path);
    } catch (const std::exception& e) {
      std::fprintf(stderr, "config error: %s\n", e.what());
      return kUsageError;
    }
  }

  cfg.kind = exp::kind_from_name(sub->get_name());
  cfg.out_dir = out_dir;

  try {
    const auto written = exp::run(cfg);
    for (const auto& path : written) std::printf("%s\n", path.c_str());
    return 0;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kUsageError;
  } catch (const std::filesystem::filesystem_error& e) {
    std::fprintf(stderr, "i/o error: %s\n", e.what());
    return kIoError;
  } catch (const std::ios_base::failure& e) {
    std::fprintf(stderr, "i/o error: %s\n", e.what());
    return kIoError;
  } catch (const groupstat::NumericError& e) {
    std::fprintf(stderr, "numeric failure: %s\n", e.what());
    return kNumericError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kNumericError;
  }
}
