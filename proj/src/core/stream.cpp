#include "groupstat/core/stream.hpp"

#include <cmath>
#include <stdexcept>

namespace groupstat::core {

namespace {

constexpr std::uint32_t kMult0 = 0xD2511F53u;
constexpr std::uint32_t kMult1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

// Counter bit marking substream-derivation blocks; ordinary draw blocks
// never set it because the block counter stays far below 2^63.
constexpr std::uint32_t kDeriveTag = 0x80000000u;

struct Words {
  std::uint32_t v[4];
};

inline std::uint32_t lo32(std::uint64_t x) { return static_cast<std::uint32_t>(x); }
inline std::uint32_t hi32(std::uint64_t x) { return static_cast<std::uint32_t>(x >> 32); }
inline std::uint64_t join(std::uint32_t lo, std::uint32_t hi) {
  return static_cast<std::uint64_t>(lo) | (static_cast<std::uint64_t>(hi) << 32);
}

Words philox4x32_10(Words ctr, std::uint32_t k0, std::uint32_t k1) {
  for (int round = 0; round < 10; ++round) {
    if (round != 0) {
      k0 += kWeyl0;
      k1 += kWeyl1;
    }
    const std::uint64_t p0 = static_cast<std::uint64_t>(kMult0) * ctr.v[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kMult1) * ctr.v[2];
    ctr = Words{{hi32(p1) ^ ctr.v[1] ^ k0, lo32(p1), hi32(p0) ^ ctr.v[3] ^ k1, lo32(p0)}};
  }
  return ctr;
}

}  // namespace

SeededStream::SeededStream(std::uint64_t master_seed, std::uint64_t stream_index)
    : master_seed_(master_seed), stream_index_(stream_index) {}

std::uint64_t SeededStream::next_u64() {
  if (buffered_ == 0) {
    const Words ctr{{lo32(block_), hi32(block_), lo32(stream_index_), hi32(stream_index_)}};
    const Words out = philox4x32_10(ctr, lo32(master_seed_), hi32(master_seed_));
    buffer_[0] = join(out.v[0], out.v[1]);
    buffer_[1] = join(out.v[2], out.v[3]);
    buffered_ = 2;
    ++block_;
  }
  return buffer_[2 - buffered_--];
}

double SeededStream::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double SeededStream::next_uniform(double lo, double hi) {
  return lo + next_double() * (hi - lo);
}

std::uint64_t SeededStream::next_index(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("next_index: bound must be positive");
  const std::uint64_t threshold = (std::uint64_t{0} - bound) % bound;
  std::uint64_t r;
  do {
    r = next_u64();
  } while (r < threshold);
  return r % bound;
}

double SeededStream::next_gaussian() {
  for (;;) {
    const double u = 2.0 * next_double() - 1.0;
    const double v = 2.0 * next_double() - 1.0;
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
  }
}

double SeededStream::next_exponential() {
  return -std::log1p(-next_double());
}

SeededStream SeededStream::substream(std::uint64_t lane) const {
  if (lane >> 63) throw std::invalid_argument("substream: lane must be below 2^63");
  const Words ctr{{lo32(lane), hi32(lane) | kDeriveTag, lo32(stream_index_), hi32(stream_index_)}};
  const Words out = philox4x32_10(ctr, lo32(master_seed_), hi32(master_seed_));
  return SeededStream(join(out.v[0], out.v[1]), join(out.v[2], out.v[3]));
}

SeededStream derive_stream(std::uint64_t master_seed, std::uint64_t index) {
  return SeededStream(master_seed, index);
}

}  // namespace groupstat::core
