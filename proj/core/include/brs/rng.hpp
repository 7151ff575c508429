#pragma once

#include <cstdint>

namespace brs {

// splitmix64: tiny, fast, and passes BigCrush when used as a stream cipher
// over a 64-bit counter.  Used both as the base generator and to derive
// statistically independent per-replicate streams from (seed, index).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

// Derives the generator for one replicate.  Streams for distinct indices are
// decorrelated by running the index through the splitmix64 finalizer before
// mixing it into the seed, so results depend only on (seed, index), never on
// which worker processes the replicate.
inline SplitMix64 replicate_stream(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 h(index);
  return SplitMix64(seed ^ h.next_u64());
}

}  // namespace brs
