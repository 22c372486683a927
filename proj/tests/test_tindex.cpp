#include <gtest/gtest.h>

#include <iterator>
#include <set>

#include "dfsf/random.hpp"
#include "dfsf/tindex.hpp"

using namespace dfsf;

TEST(TIndex, StartsFull) {
  TIndex t(10);
  EXPECT_EQ(t.size(), 10u);
  EXPECT_EQ(t.count_leq(-1), 0u);
  EXPECT_EQ(t.count_leq(0), 1u);
  EXPECT_EQ(t.count_leq(9), 10u);
  EXPECT_EQ(t.count_leq(100), 10u);
  for (uint32_t k = 0; k < 10; ++k) EXPECT_EQ(t.select(k), k);
}

TEST(TIndex, EraseTwice) {
  TIndex t(4);
  EXPECT_TRUE(t.erase(2));
  EXPECT_FALSE(t.erase(2));
  EXPECT_EQ(t.size(), 3u);
  EXPECT_EQ(t.select(2), 3u);
  EXPECT_THROW(t.select(3), std::out_of_range);
}

TEST(TIndex, AgreesWithOrderedSet) {
  for (uint32_t n : {1u, 2u, 7u, 64u, 1000u, 4097u}) {
    TIndex t(n);
    std::set<uint32_t> naive;
    for (uint32_t i = 0; i < n; ++i) naive.insert(i);
    Xoshiro256 rng(n);
    for (int op = 0; op < 100000 && !naive.empty(); ++op) {
      const uint64_t r = rng();
      switch (r % 3) {
        case 0: {
          const auto x = static_cast<int64_t>(rng() % (n + 2)) - 1;
          const auto expect = std::distance(naive.begin(), naive.upper_bound(static_cast<uint32_t>(std::max<int64_t>(x, -1))));
          ASSERT_EQ(t.count_leq(x), x < 0 ? 0u : static_cast<uint32_t>(expect));
          break;
        }
        case 1: {
          const auto k = static_cast<uint32_t>(rng() % naive.size());
          ASSERT_EQ(t.select(k), *std::next(naive.begin(), k));
          break;
        }
        default: {
          if (op % 7 != 0) break;  // keep the set populated for longer
          const auto v = static_cast<uint32_t>(rng() % n);
          ASSERT_EQ(t.erase(v), naive.erase(v) == 1);
          ASSERT_EQ(t.contains(v), false);
        }
      }
      ASSERT_EQ(t.size(), naive.size());
    }
  }
}
