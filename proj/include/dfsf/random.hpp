#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>

namespace dfsf {

// splitmix64, used only to expand a 64-bit seed into generator state.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t operator()() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  uint64_t state_;
};

// xoshiro256** (Blackman & Vigna). Seeded by four splitmix64 outputs.
class Xoshiro256 {
 public:
  using result_type = uint64_t;

  explicit Xoshiro256(uint64_t seed);

  uint64_t operator()();

  // 53-bit uniform in [0, 1); 0 is a possible value.
  double uniform();

  static constexpr uint64_t min() { return 0; }
  static constexpr uint64_t max() { return std::numeric_limits<uint64_t>::max(); }

 private:
  std::array<uint64_t, 4> s_{};
};

// Sentinel for "no limit" in skip_to_next_success and for an infinite gap.
inline constexpr uint64_t kUnbounded = std::numeric_limits<uint64_t>::max();

struct SkipOutcome {
  bool success = false;
  // Zeros consumed before the success (success) or in total (exhausted).
  uint64_t zeros = 0;
};

// A deterministic stream of i.i.d. Bernoulli(p) bits.
//
// The stream is generated as a sequence of geometric gaps: each uniform draw u
// yields a run of floor(ln(1-u)/ln(1-p)) zeros followed by a one. Bit-by-bit
// consumption and skipping share the same pending gap, so both views of the
// stream see the same success positions.
class BitStream {
 public:
  BitStream(uint64_t seed, double p);

  bool next_bit();

  // Consume zeros up to the next one, but at most `limit` zeros. On success
  // the cursor advances by zeros+1, on exhaustion by `limit`.
  SkipOutcome skip_to_next_success(uint64_t limit);

  uint64_t cursor() const { return cursor_; }
  double p() const { return p_; }
  uint64_t seed() const { return seed_; }

 private:
  uint64_t draw_gap();

  Xoshiro256 gen_;
  uint64_t seed_;
  double p_;
  double log_q_;
  uint64_t cursor_ = 0;
  std::optional<uint64_t> pending_;
};

// Map a uniform in [0,1) to a geometric number of failures before the first
// success. p >= 1 gives 0; p <= 0 gives kUnbounded.
uint64_t geometric_from_uniform(double u, double p);

}  // namespace dfsf
