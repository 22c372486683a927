#pragma once

#include <cstdint>
#include <vector>

namespace dfsf {

// Order-statistics index over the labels 0..n-1 that are still present.
// Starts full; labels can only be removed. Backed by a Fenwick tree.
class TIndex {
 public:
  explicit TIndex(uint32_t n);

  uint32_t universe() const { return n_; }
  uint32_t size() const { return size_; }
  bool contains(uint32_t label) const { return present_[label] != 0; }

  // Number of present labels <= x. x = -1 gives 0; x >= n gives size().
  uint32_t count_leq(int64_t x) const;

  // The k-th smallest present label, k counted from 0. Requires k < size().
  uint32_t select(uint32_t k) const;

  // Removes a present label. Returns false if it was already absent.
  bool erase(uint32_t label);

  const std::vector<uint8_t>& presence() const { return present_; }

 private:
  uint32_t n_;
  uint32_t size_;
  uint32_t top_bit_;
  std::vector<uint32_t> tree_;  // 1-based
  std::vector<uint8_t> present_;
};

}  // namespace dfsf
