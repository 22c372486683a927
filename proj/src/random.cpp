#include "dfsf/random.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace dfsf {

namespace {

inline uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Xoshiro256::Xoshiro256(uint64_t seed) {
  SplitMix64 sm(seed);
  for (auto& word : s_) word = sm();
}

uint64_t Xoshiro256::operator()() {
  const uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Xoshiro256::uniform() {
  return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

uint64_t geometric_from_uniform(double u, double p) {
  if (p >= 1.0) return 0;
  if (p <= 0.0) return kUnbounded;
  if (u <= 0.0) return 0;
  const double k = std::floor(std::log1p(-u) / std::log1p(-p));
  // Anything this large is beyond every pair space we can address.
  if (!(k < 0x1.0p63)) return kUnbounded;
  return static_cast<uint64_t>(k);
}

BitStream::BitStream(uint64_t seed, double p)
    : gen_(seed), seed_(seed), p_(p), log_q_(std::log1p(-p)) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("BitStream: p must lie in [0, 1]");
}

uint64_t BitStream::draw_gap() { return geometric_from_uniform(gen_.uniform(), p_); }

bool BitStream::next_bit() {
  if (!pending_) pending_ = draw_gap();
  ++cursor_;
  if (*pending_ == kUnbounded) return false;
  if (*pending_ > 0) {
    --*pending_;
    return false;
  }
  pending_.reset();
  return true;
}

SkipOutcome BitStream::skip_to_next_success(uint64_t limit) {
  if (p_ <= 0.0 && limit == kUnbounded)
    throw std::invalid_argument("skip_to_next_success: p = 0 with unbounded limit never terminates");
  if (!pending_) pending_ = draw_gap();
  if (*pending_ == kUnbounded) {
    cursor_ += limit;
    return {false, limit};
  }
  if (*pending_ < limit) {
    const uint64_t k = *pending_;
    cursor_ += k + 1;
    pending_.reset();
    return {true, k};
  }
  *pending_ -= limit;
  cursor_ += limit;
  return {false, limit};
}

}  // namespace dfsf
