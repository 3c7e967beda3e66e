#pragma once

#include <array>
#include <cstdint>

namespace groupstat::core {

/// Deterministic random stream backed by a counter-based generator
/// (Philox4x32-10).  A stream is identified by (master_seed, stream_index);
/// every draw is a pure function of that pair and the draw position, so
/// distinct stream indices never overlap and a given stream replays the
/// same sequence on every run.
///
/// Streams are value types: a copy replays the original from the copy
/// point.  They may be moved between threads but must not be shared
/// mutably.
class SeededStream {
 public:
  SeededStream(std::uint64_t master_seed, std::uint64_t stream_index);

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_index() const { return stream_index_; }

  std::uint64_t next_u64();

  /// Uniform on [0,1) with 53-bit resolution.
  double next_double();

  double next_uniform(double lo, double hi);

  /// Unbiased uniform draw from {0, ..., bound-1} by rejection.
  std::uint64_t next_index(std::uint64_t bound);

  /// Standard normal via the Marsaglia polar method.
  double next_gaussian();

  /// Rate-1 exponential via inverse CDF -ln(1-U).
  double next_exponential();

  /// Independent child stream.  Lane blocks live in a tagged region of the
  /// counter space, so no lane ever reuses bits emitted as variates by this
  /// stream or any sibling.  Lanes must be below 2^63.
  SeededStream substream(std::uint64_t lane) const;

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_index_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int buffered_ = 0;
};

/// Stream for (master_seed, index); same arguments always yield the same
/// stream.
SeededStream derive_stream(std::uint64_t master_seed, std::uint64_t index);

}  // namespace groupstat::core
