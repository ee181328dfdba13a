#pragma once

// Chain decomposition of T_{m,2}.
//
// For n = 2 every profile is (0, ..., 0, 2, ..., 2): the first p columns lie
// above the path and the rest carry a forced vertical domino. Row 1 is the
// bottom row, row 2 the top row. A horizontal domino "at k" has its right end
// in column k.
//
// pi lowers the weight degree by exactly one, applying the first move that
// fits:
//   M1  a bottom domino at 2 is removed;
//   M2  otherwise the leftmost bottom domino (at k) moves to k-1 and bottom
//       dominoes are packed to its left at k-3, k-5, ... (ends >= 2);
//   M3  otherwise the leftmost vertical (column k) is laid down as a bottom
//       domino at k and dominoes are packed to its left at k-2, k-4, ...;
//       for k = 1 the vertical simply disappears;
//   M4  otherwise the tiling is fixed.
// pi_star undoes pi wherever pi moved something. The top row is never touched,
// so blocks are indexed by their top-row tiling.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "fibwork/fib.hpp"
#include "fibwork/qpoly.hpp"
#include "fibwork/tiling.hpp"

namespace fibwork {

enum class ChainRole { minimal, maximal, interior, both };

inline std::string_view to_string(ChainRole role) {
  switch (role) {
    case ChainRole::minimal: return "minimal";
    case ChainRole::maximal: return "maximal";
    case ChainRole::interior: return "interior";
    case ChainRole::both: return "both";
  }
  return "?";
}

/// One block of the partition, listed from its maximal tiling down to its
/// minimal one; degrees run through [min_degree, max_degree].
struct ChainBlock {
  std::vector<Tiling> tilings;
  std::uint64_t min_degree = 0;
  std::uint64_t max_degree = 0;
  std::vector<int> top_row_signature;

  std::size_t size() const noexcept { return tilings.size(); }
};

namespace detail {

inline void require_n2(const Tiling& t, const char* what) {
  if (t.n != 2) throw DomainError(std::string(what) + " is defined only for n = 2");
}

/// Columns above the path (the prefix with h = 0).
inline int open_columns(const Tiling& t) { return t.above_length(1); }

inline bool bottom_covers(const std::vector<int>& bottom, int column) {
  return std::any_of(bottom.begin(), bottom.end(), [column](int e) { return e == column || e - 1 == column; });
}

// Bottom dominoes at start, start-2, ... down to 2, ascending.
inline std::vector<int> packed_from(int start) {
  std::vector<int> ends;
  for (int e = start; e >= 2; e -= 2) ends.push_back(e);
  std::reverse(ends.begin(), ends.end());
  return ends;
}

}  // namespace detail

inline Tiling pi(const Tiling& t) {
  detail::require_n2(t, "pi");
  Tiling out = t;
  auto& bottom = out.row(1);
  // M1
  if (!bottom.empty() && bottom.front() == 2) {
    bottom.erase(bottom.begin());
    return out;
  }
  // M2
  if (!bottom.empty()) {
    const int k = bottom.front();
    bottom.erase(bottom.begin());
    auto packed = detail::packed_from(k - 1);
    bottom.insert(bottom.begin(), packed.begin(), packed.end());
    return out;
  }
  // M3
  const int open = detail::open_columns(t);
  if (open < t.m) {
    const int k = open + 1;
    out.heights[static_cast<std::size_t>(k - 1)] = 0;
    bottom = detail::packed_from(k);
    return out;
  }
  // M4
  return out;
}

inline Tiling pi_star(const Tiling& t) {
  detail::require_n2(t, "pi_star");
  Tiling out = t;
  auto& bottom = out.row(1);
  const auto& top = t.row(2);
  const int open = detail::open_columns(t);

  // (1) bottom cells of columns 1 and 2 both free: add a domino at 2.
  if (open >= 2 && !detail::bottom_covers(bottom, 1) && !detail::bottom_covers(bottom, 2)) {
    bottom.insert(bottom.begin(), 2);
    return out;
  }
  // (2) shift the leftmost right-shiftable bottom domino, dropping those left of it.
  for (std::size_t idx = 0; idx < bottom.size(); ++idx) {
    const int e = bottom[idx];
    if (e + 1 <= open && !detail::bottom_covers(bottom, e + 1)) {
      std::vector<int> rest(bottom.begin() + static_cast<std::ptrdiff_t>(idx) + 1, bottom.end());
      rest.insert(rest.begin(), e + 1);
      bottom = std::move(rest);
      return out;
    }
  }
  // (3) stand the rightmost bottom domino up as a vertical when its top cell
  // is free and nothing in the top row lies further right.
  if (!bottom.empty()) {
    const int e = bottom.back();
    const bool top_clear = std::all_of(top.begin(), top.end(), [e](int end) { return end < e; });
    if (e == open && top_clear) {
      out.heights[static_cast<std::size_t>(e - 1)] = 2;
      bottom.clear();
      return out;
    }
  }
  // Inverse of M3 at k = 1: an empty first column next to verticals.
  if (bottom.empty() && open == 1 && top.empty()) {
    out.heights[0] = 2;
    return out;
  }
  // (4)
  return out;
}

/// No verticals and nothing in the bottom row.
inline bool is_structurally_minimal(const Tiling& t) {
  detail::require_n2(t, "is_structurally_minimal");
  return detail::open_columns(t) == t.m && t.row(1).empty();
}

/// With alpha the right end of the rightmost top domino (0 if none): every
/// column right of alpha is vertical and the bottom row is packed with
/// dominoes at alpha, alpha-2, ..., leaving column 1 empty when alpha is odd.
inline bool is_structurally_maximal(const Tiling& t) {
  detail::require_n2(t, "is_structurally_maximal");
  const int alpha = t.row(2).empty() ? 0 : t.row(2).back();
  return detail::open_columns(t) == alpha && t.row(1) == detail::packed_from(alpha);
}

inline ChainRole classify(const Tiling& t) {
  detail::require_n2(t, "classify");
  const bool minimal = pi(t) == t;
  const bool maximal = pi_star(t) == t;
  if (minimal && maximal) return ChainRole::both;
  if (minimal) return ChainRole::minimal;
  if (maximal) return ChainRole::maximal;
  return ChainRole::interior;
}

/// Partitions T_{m,2} by the fixed point that repeated pi reaches. Blocks are
/// ordered by minimal degree; each lists its tilings from maximal to minimal.
inline std::vector<ChainBlock> decompose(int m, std::uint64_t cap = kDefaultEnumerationCap) {
  if (m < 1) throw DomainError("decompose requires m >= 1");
  const auto all = enumerate_tilings(m, 2, cap);
  const std::uint64_t max_steps = fib64(static_cast<std::size_t>(m + 3)) - 2;

  std::map<Tiling, std::size_t> block_of;
  std::vector<std::vector<Tiling>> members;
  std::map<Tiling, std::size_t> block_by_fixed_point;
  for (const auto& start : all) {
    if (block_of.count(start)) continue;
    std::vector<Tiling> path{start};
    std::optional<std::size_t> block;
    std::uint64_t steps = 0;
    while (true) {
      const Tiling& current = path.back();
      Tiling next = pi(current);
      if (next == current) {
        auto [it, inserted] = block_by_fixed_point.emplace(current, members.size());
        if (inserted) members.emplace_back();
        block = it->second;
        break;
      }
      if (auto known = block_of.find(next); known != block_of.end()) {
        block = known->second;
        break;
      }
      if (++steps > max_steps) throw std::logic_error("pi failed to reach a fixed point within the degree bound");
      path.push_back(std::move(next));
    }
    for (auto& t : path) {
      block_of.emplace(t, *block);
      members[*block].push_back(std::move(t));
    }
  }

  std::vector<ChainBlock> blocks;
  blocks.reserve(members.size());
  for (auto& tilings : members) {
    std::sort(tilings.begin(), tilings.end(),
              [](const Tiling& a, const Tiling& b) { return weight_degree(a) > weight_degree(b); });
    ChainBlock block;
    block.max_degree = weight_degree(tilings.front());
    block.min_degree = weight_degree(tilings.back());
    block.top_row_signature = tilings.front().row(2);
    block.tilings = std::move(tilings);
    blocks.push_back(std::move(block));
  }
  std::sort(blocks.begin(), blocks.end(), [](const ChainBlock& a, const ChainBlock& b) {
    if (a.min_degree != b.min_degree) return a.min_degree < b.min_degree;
    return a.top_row_signature < b.top_row_signature;
  });
  return blocks;
}

/// Sum over blocks of q^l + ... + q^r.
inline Polynomial block_polynomial(const std::vector<ChainBlock>& blocks) {
  std::vector<BigInt> coeffs;
  for (const auto& block : blocks) {
    if (coeffs.size() <= block.max_degree) coeffs.resize(block.max_degree + 1, BigInt(0));
    for (auto d = block.min_degree; d <= block.max_degree; ++d) coeffs[d] += 1;
  }
  return Polynomial(std::move(coeffs));
}

}  // namespace fibwork
