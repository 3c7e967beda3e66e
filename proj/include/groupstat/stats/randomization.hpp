#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "groupstat/core/stream.hpp"
#include "groupstat/groups/samplers.hpp"
#include "groupstat/parallel.hpp"

namespace groupstat::stats {

enum class Alternative {
  Greater,   ///< replicate >= observed
  Less,      ///< replicate <= observed
  TwoSided,  ///< |replicate| >= |observed|
};

struct RandomizationOutcome {
  double observed = 0.0;
  std::vector<double> replicates;   ///< raw replicate statistics T(pi_g x)
  double p_value = 1.0;
  std::optional<double> threshold;  ///< t_alpha, present when a level was requested
};

/// Smallest achieved value t such that the fraction of values strictly
/// exceeding t is at most alpha (the infimum over the reals lands on an
/// achieved value for finite orbits).
double threshold_from_values(std::vector<double> values, double alpha);

namespace detail {

inline bool counts_against_null(Alternative alt, double replicate, double observed) {
  switch (alt) {
    case Alternative::Greater:
      return replicate >= observed;
    case Alternative::Less:
      return replicate <= observed;
    case Alternative::TwoSided:
      return std::abs(replicate) >= std::abs(observed);
  }
  return false;
}

inline std::size_t count_hits(Alternative alt, std::span<const double> replicates,
                              double observed) {
  std::size_t hits = 0;
  for (const double value : replicates)
    if (counts_against_null(alt, value, observed)) ++hits;
  return hits;
}

}  // namespace detail

/// Monte Carlo randomization test with the add-one estimator
/// (1 + #hits) / (1 + r).  `randomize` writes pi_g x into its output
/// argument using the supplied stream; replicate k draws from substream k
/// of `stream`, so the outcome does not depend on the execution mode or
/// thread count.  When `alpha` is given, the threshold t_alpha is computed
/// from the same raw replicate values (strict-exceedance rule).
template <class Statistic, class Randomize>
RandomizationOutcome randomization_pvalue(std::span<const double> x, Statistic&& statistic,
                                          Randomize&& randomize, std::size_t r,
                                          core::SeededStream stream,
                                          Alternative alt = Alternative::Greater,
                                          std::optional<double> alpha = std::nullopt,
                                          ExecMode mode = ExecMode::OpenMP) {
  RandomizationOutcome outcome;
  outcome.observed = statistic(x);
  outcome.replicates.resize(r);
  double* values = outcome.replicates.data();
#ifdef _OPENMP
#pragma omp parallel if (mode == ExecMode::OpenMP)
#endif
  {
    std::vector<double> orbit_point;
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(r); ++i) {
      auto lane = stream.substream(static_cast<std::uint64_t>(i));
      randomize(x, lane, orbit_point);
      values[i] = statistic(std::span<const double>(orbit_point));
    }
  }
  (void)mode;
  const std::size_t hits = detail::count_hits(alt, outcome.replicates, outcome.observed);
  outcome.p_value = static_cast<double>(1 + hits) / static_cast<double>(1 + r);
  if (alpha) outcome.threshold = threshold_from_values(outcome.replicates, *alpha);
  return outcome;
}

template <class Statistic, class Randomize>
double randomization_threshold(std::span<const double> x, Statistic&& statistic,
                               Randomize&& randomize, std::size_t r, double alpha,
                               core::SeededStream stream, ExecMode mode = ExecMode::OpenMP) {
  const auto outcome = randomization_pvalue(x, statistic, randomize, r, stream,
                                            Alternative::Greater, alpha, mode);
  return *outcome.threshold;
}

/// Exact randomization test over a full enumeration: the p-value is
/// #{g : T(pi_g x) >= T(x)} / |G| with no add-one correction, and the orbit
/// includes the identity.  `Enumeration` exposes size() and
/// apply_element(k, x, out).
template <class Statistic, class Enumeration>
RandomizationOutcome exact_randomization_pvalue(std::span<const double> x, Statistic&& statistic,
                                                const Enumeration& enumeration,
                                                Alternative alt = Alternative::Greater,
                                                std::optional<double> alpha = std::nullopt) {
  RandomizationOutcome outcome;
  outcome.observed = statistic(x);
  const std::size_t count = enumeration.size();
  outcome.replicates.resize(count);
  std::vector<double> orbit_point;
  for (std::size_t k = 0; k < count; ++k) {
    enumeration.apply_element(k, x, orbit_point);
    outcome.replicates[k] = statistic(std::span<const double>(orbit_point));
  }
  const std::size_t hits = detail::count_hits(alt, outcome.replicates, outcome.observed);
  outcome.p_value = static_cast<double>(hits) / static_cast<double>(count);
  if (alpha) outcome.threshold = threshold_from_values(outcome.replicates, *alpha);
  return outcome;
}

template <class Statistic, class Enumeration>
double exact_randomization_threshold(std::span<const double> x, Statistic&& statistic,
                                     const Enumeration& enumeration, double alpha) {
  const auto outcome =
      exact_randomization_pvalue(x, statistic, enumeration, Alternative::Greater, alpha);
  return *outcome.threshold;
}

/// Orbit randomizers for the three concrete groups.
struct SignFlipRandomizer {
  void operator()(std::span<const double> x, core::SeededStream& stream,
                  std::vector<double>& out) const {
    const auto g = groups::sample_signs(x.size(), stream);
    groups::apply_into(g, x, out);
  }
};

struct PermutationRandomizer {
  void operator()(std::span<const double> x, core::SeededStream& stream,
                  std::vector<double>& out) const {
    const auto g = groups::sample_permutation(x.size(), stream);
    groups::apply_into(g, x, out);
  }
};

struct RotationRandomizer {
  void operator()(std::span<const double> x, core::SeededStream& stream,
                  std::vector<double>& out) const {
    const auto g = groups::sample_rotation(x.size(), stream);
    groups::apply_into(g, x, out);
  }
};

}  // namespace groupstat::stats
