#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "fibwork/chains2.hpp"
#include "fibwork/fibonomial.hpp"
#include "fibwork/svg.hpp"

using namespace fibwork;

namespace {

Tiling make(int m, std::vector<int> heights, std::vector<int> bottom, std::vector<int> top) {
  Tiling t = Tiling::empty(m, 2);
  t.heights = std::move(heights);
  t.row(1) = std::move(bottom);
  t.row(2) = std::move(top);
  validate(t);
  return t;
}

}  // namespace

TEST(Pi, AllVerticalChainOnThreeColumns) {
  const auto all_vertical = make(3, {2, 2, 2}, {}, {});
  const auto step1 = pi(all_vertical);
  EXPECT_EQ(step1, make(3, {0, 2, 2}, {}, {}));
  EXPECT_EQ(weight_degree(step1), 5u);
  const auto step2 = pi(step1);
  EXPECT_EQ(step2, make(3, {0, 0, 2}, {2}, {}));
  EXPECT_EQ(weight_degree(step2), 4u);
}

TEST(Pi, MovesAndFixedPoints) {
  // M1
  EXPECT_EQ(pi(make(4, {0, 0, 0, 0}, {2, 4}, {})), make(4, {0, 0, 0, 0}, {4}, {}));
  // M2: leftmost bottom domino at 4 moves to 3 and nothing fits left of it
  EXPECT_EQ(pi(make(4, {0, 0, 0, 0}, {4}, {})), make(4, {0, 0, 0, 0}, {3}, {}));
  // M2 with refill: 5 -> 4 and a domino at 2
  EXPECT_EQ(pi(make(5, {0, 0, 0, 0, 0}, {5}, {})), make(5, {0, 0, 0, 0, 0}, {2, 4}, {}));
  // M3 at k = 1
  EXPECT_EQ(pi(make(2, {2, 2}, {}, {})), make(2, {0, 2}, {}, {}));
  // M4
  const auto top_only = make(4, {0, 0, 0, 0}, {}, {2, 4});
  EXPECT_EQ(pi(top_only), top_only);
  EXPECT_THROW(pi(Tiling::empty(3, 3)), DomainError);
}

TEST(PiStar, Examples) {
  const auto empty = Tiling::empty(3, 2);
  EXPECT_EQ(pi_star(empty), make(3, {0, 0, 0}, {2}, {}));
  const auto all_vertical = make(3, {2, 2, 2}, {}, {});
  EXPECT_EQ(pi_star(all_vertical), all_vertical);
  EXPECT_THROW(pi_star(Tiling::empty(2, 3)), DomainError);
}

TEST(PiStar, RoundTripsOverFullEnumeration) {
  for (int m = 1; m <= 8; ++m) {
    for (const auto& t : enumerate_tilings(m, 2)) {
      const auto down = pi(t);
      if (down != t) {
        EXPECT_EQ(weight_degree(t), weight_degree(down) + 1);
        EXPECT_EQ(pi_star(down), t) << to_string(t);
        EXPECT_EQ(down.row(2), t.row(2));
      }
      const auto up = pi_star(t);
      if (up != t) {
        EXPECT_NO_THROW(validate(up));
        EXPECT_EQ(pi(up), t) << to_string(t);
        EXPECT_EQ(up.row(2), t.row(2));
      }
    }
  }
}

TEST(Classify, Examples) {
  EXPECT_EQ(classify(Tiling::empty(2, 2)), ChainRole::minimal);
  EXPECT_EQ(classify(make(3, {2, 2, 2}, {}, {})), ChainRole::maximal);
  EXPECT_EQ(classify(make(4, {0, 0, 0, 0}, {}, {2, 4})), ChainRole::minimal);
  // Both rows full: M1 can remove the bottom domino, nothing can be added.
  EXPECT_EQ(classify(make(2, {0, 0}, {2}, {2})), ChainRole::maximal);
  EXPECT_EQ(classify(make(2, {0, 0}, {}, {2})), ChainRole::minimal);
  EXPECT_EQ(to_string(ChainRole::interior), "interior");
}

TEST(Classify, StructuralDescriptionsAgreeWithFixedPoints) {
  for (int m = 1; m <= 10; ++m) {
    for (const auto& t : enumerate_tilings(m, 2)) {
      EXPECT_EQ(is_structurally_minimal(t), pi(t) == t) << to_string(t);
      EXPECT_EQ(is_structurally_maximal(t), pi_star(t) == t) << to_string(t);
    }
  }
}

TEST(Decompose, ThreeColumns) {
  const auto blocks = decompose(3);
  ASSERT_EQ(blocks.size(), 3u);
  std::vector<std::size_t> sizes;
  std::size_t total = 0;
  for (const auto& b : blocks) {
    sizes.push_back(b.size());
    total += b.size();
  }
  EXPECT_EQ(sizes, (std::vector<std::size_t>{7, 5, 3}));
  EXPECT_EQ(total, 15u);
  EXPECT_EQ(blocks[0].min_degree, 0u);
  EXPECT_EQ(blocks[0].max_degree, 6u);
  EXPECT_EQ(blocks[1].min_degree, 1u);
  EXPECT_EQ(blocks[1].max_degree, 5u);
  EXPECT_EQ(blocks[2].min_degree, 2u);
  EXPECT_EQ(blocks[2].max_degree, 4u);
  EXPECT_EQ(decompose(1).size(), 1u);
  EXPECT_THROW(decompose(0), DomainError);
}

TEST(Decompose, InvariantsUpToTen) {
  for (int m = 1; m <= 10; ++m) {
    const auto blocks = decompose(m);
    const auto f1 = fib64(m + 1), f2 = fib64(m + 2), f3 = fib64(m + 3);
    ASSERT_EQ(blocks.size(), f1) << m;
    std::multiset<std::uint64_t> minima, maxima;
    std::set<std::vector<int>> signatures;
    std::size_t total = 0;
    for (const auto& b : blocks) {
      minima.insert(b.min_degree);
      maxima.insert(b.max_degree);
      EXPECT_TRUE(signatures.insert(b.top_row_signature).second);
      EXPECT_EQ(b.size(), b.max_degree - b.min_degree + 1);
      for (std::size_t i = 0; i < b.size(); ++i) {
        const auto& t = b.tilings[i];
        EXPECT_EQ(weight_degree(t), b.max_degree - i);
        EXPECT_EQ(t.row(2), b.top_row_signature);
        if (i + 1 < b.size()) {
          EXPECT_EQ(pi(t), b.tilings[i + 1]);
        }
      }
      EXPECT_EQ(classify(b.tilings.front()), b.size() == 1 ? ChainRole::both : ChainRole::maximal);
      EXPECT_EQ(pi(b.tilings.back()), b.tilings.back());
      total += b.size();
    }
    std::multiset<std::uint64_t> expected_min, expected_max;
    for (std::uint64_t d = 0; d < f1; ++d) expected_min.insert(d);
    for (std::uint64_t d = f2 - 1; d <= f3 - 2; ++d) expected_max.insert(d);
    EXPECT_EQ(minima, expected_min);
    EXPECT_EQ(maxima, expected_max);
    EXPECT_EQ(BigInt(total), fibonomial_number(m, 2));
    const auto sum = block_polynomial(blocks);
    EXPECT_EQ(sum, closed_form_n2(m));
    EXPECT_EQ(sum, qfibonomial(m, 2));
  }
}

TEST(Decompose, ChainGallerySvg) {
  const auto svg = render_chains_svg(decompose(3), 3);
  EXPECT_NE(svg.find("block 1: degrees 0..6, 7 tilings"), std::string::npos);
  EXPECT_NE(svg.find("block 2: degrees 1..5, 5 tilings"), std::string::npos);
  EXPECT_NE(svg.find("block 3: degrees 2..4, 3 tilings"), std::string::npos);
  EXPECT_EQ(svg, render_chains_svg(decompose(3), 3));
}
