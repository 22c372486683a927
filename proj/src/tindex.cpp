#include "dfsf/tindex.hpp"

#include <bit>
#include <stdexcept>

namespace dfsf {

TIndex::TIndex(uint32_t n)
    : n_(n), size_(n), top_bit_(n == 0 ? 0 : std::bit_floor(n)), tree_(static_cast<size_t>(n) + 1, 0), present_(n, 1) {
  // Linear-time build of a tree over all-ones.
  for (uint32_t i = 1; i <= n; ++i) {
    tree_[i] += 1;
    const uint32_t parent = i + (i & (~i + 1));
    if (parent <= n) tree_[parent] += tree_[i];
  }
}

uint32_t TIndex::count_leq(int64_t x) const {
  if (x < 0) return 0;
  if (x >= static_cast<int64_t>(n_)) return size_;
  uint32_t sum = 0;
  for (uint32_t i = static_cast<uint32_t>(x) + 1; i > 0; i &= i - 1) sum += tree_[i];
  return sum;
}

uint32_t TIndex::select(uint32_t k) const {
  if (k >= size_) throw std::out_of_range("TIndex::select: rank out of range");
  // Binary lifting: find the largest position whose prefix sum is <= k.
  uint32_t pos = 0;
  uint32_t remaining = k;
  for (uint32_t step = top_bit_; step > 0; step >>= 1) {
    const uint32_t next = pos + step;
    if (next <= n_ && tree_[next] <= remaining) {
      pos = next;
      remaining -= tree_[next];
    }
  }
  return pos;  // 1-based pos+1 is the answer, i.e. label pos
}

bool TIndex::erase(uint32_t label) {
  if (label >= n_) throw std::out_of_range("TIndex::erase: label out of range");
  if (!present_[label]) return false;
  present_[label] = 0;
  --size_;
  for (uint32_t i = label + 1; i <= n_; i += i & (~i + 1)) --tree_[i];
  return true;
}

}  // namespace dfsf
