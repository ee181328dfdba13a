#pragma once

// Weighted path-domino tilings of an m x n board.
//
// Columns are 1..m left to right, rows 1..n bottom to top, and cell (i, j)
// has its top-right corner at lattice point (i, j). A monotone lattice path
// from (0,0) to (m,n) is stored as a height profile h_1 <= ... <= h_m: column
// i has h_i cells below the path. Above the path each row is a prefix of
// columns tiled by squares and horizontal dominoes; below it each column is
// tiled by squares and vertical dominoes, and the two cells directly under
// the path's horizontal step, (i, h_i) and (i, h_i - 1), always form a forced
// vertical domino. A step at height 1 leaves no room for that domino, so
// profiles never contain h_i = 1.
//
// Weights (exponents of q), by top-right corner (i, j):
//   horizontal domino      F_i F_j
//   free vertical domino   F_i F_j
//   forced vertical domino F_{i+1} F_j
// Squares contribute nothing.

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstdint>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fibwork/fib.hpp"
#include "fibwork/qpoly.hpp"

namespace fibwork {

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

struct Tiling {
  int m = 0;
  int n = 0;
  /// heights[i - 1] = h_i.
  std::vector<int> heights;
  /// row_dominoes[j - 1]: right-end columns of the horizontal dominoes in row
  /// j, ascending.
  std::vector<std::vector<int>> row_dominoes;
  /// column_dominoes[i - 1]: top rows of the free vertical dominoes in column
  /// i, ascending. The forced domino is implied by the height.
  std::vector<std::vector<int>> column_dominoes;

  /// All heights zero, every cell a square.
  static Tiling empty(int m, int n) {
    Tiling t;
    t.m = m;
    t.n = n;
    t.heights.assign(static_cast<std::size_t>(m), 0);
    t.row_dominoes.assign(static_cast<std::size_t>(n), {});
    t.column_dominoes.assign(static_cast<std::size_t>(m), {});
    return t;
  }

  int height(int column) const { return heights[static_cast<std::size_t>(column - 1)]; }
  const std::vector<int>& row(int r) const { return row_dominoes[static_cast<std::size_t>(r - 1)]; }
  std::vector<int>& row(int r) { return row_dominoes[static_cast<std::size_t>(r - 1)]; }
  const std::vector<int>& column(int c) const { return column_dominoes[static_cast<std::size_t>(c - 1)]; }

  bool has_forced_domino(int column) const { return height(column) >= 2; }

  /// Number of columns (a prefix) lying above the path in the given row.
  int above_length(int r) const {
    return static_cast<int>(std::count_if(heights.begin(), heights.end(), [r](int h) { return h < r; }));
  }

  friend auto operator<=>(const Tiling&, const Tiling&) = default;
  friend bool operator==(const Tiling&, const Tiling&) = default;
};

class EnumerationCapExceeded : public std::runtime_error {
 public:
  EnumerationCapExceeded(BigInt projected, std::uint64_t cap)
      : std::runtime_error("tiling enumeration refused: " + to_decimal(projected) + " tilings exceed cap " +
                           std::to_string(cap)),
        projected_(std::move(projected)),
        cap_(cap) {}

  const BigInt& projected() const noexcept { return projected_; }
  std::uint64_t cap() const noexcept { return cap_; }

 private:
  BigInt projected_;
  std::uint64_t cap_;
};

namespace detail {

inline bool valid_domino_list(const std::vector<int>& ends, int length) {
  int previous = 0;
  for (int e : ends) {
    if (e < 2 || e > length || e - previous < 2) return false;
    previous = e;
  }
  return true;
}

}  // namespace detail

/// Weakly increasing, entries in {0} u {2..n}.
inline bool is_valid_profile(const std::vector<int>& heights, int n) {
  int previous = 0;
  for (int h : heights) {
    if (h < previous || h == 1 || h < 0 || h > n) return false;
    previous = h;
  }
  return true;
}

/// Throws std::invalid_argument describing the first broken invariant.
inline void validate(const Tiling& t) {
  if (t.m < 0 || t.n < 0) throw std::invalid_argument("negative board size");
  if (t.heights.size() != static_cast<std::size_t>(t.m) || t.column_dominoes.size() != static_cast<std::size_t>(t.m) ||
      t.row_dominoes.size() != static_cast<std::size_t>(t.n)) {
    throw std::invalid_argument("tiling arrays do not match the board size");
  }
  if (!is_valid_profile(t.heights, t.n)) throw std::invalid_argument("invalid height profile");
  for (int r = 1; r <= t.n; ++r) {
    if (!detail::valid_domino_list(t.row(r), t.above_length(r))) {
      throw std::invalid_argument("invalid horizontal dominoes in row " + std::to_string(r));
    }
  }
  for (int c = 1; c <= t.m; ++c) {
    const int free_cells = std::max(0, t.height(c) - 2);
    if (!detail::valid_domino_list(t.column(c), free_cells)) {
      throw std::invalid_argument("invalid vertical dominoes in column " + std::to_string(c));
    }
  }
}

/// Exponent of q in w(T).
inline std::uint64_t weight_degree(const Tiling& t) {
  std::uint64_t degree = 0;
  for (int r = 1; r <= t.n; ++r) {
    for (int e : t.row(r)) degree += fib64(static_cast<std::size_t>(e)) * fib64(static_cast<std::size_t>(r));
  }
  for (int c = 1; c <= t.m; ++c) {
    for (int top : t.column(c)) degree += fib64(static_cast<std::size_t>(c)) * fib64(static_cast<std::size_t>(top));
    if (t.has_forced_domino(c)) {
      degree += fib64(static_cast<std::size_t>(c + 1)) * fib64(static_cast<std::size_t>(t.height(c)));
    }
  }
  return degree;
}

/// Every square/domino tiling of a 1 x length strip, as ascending lists of
/// domino end positions, in lexicographic order. There are F_{length+1}.
inline std::vector<std::vector<int>> strip_tilings(int length) {
  std::vector<std::vector<int>> out;
  std::vector<int> current;
  std::function<void(int)> extend = [&](int next_end) {
    out.push_back(current);
    for (int e = next_end; e <= length; ++e) {
      current.push_back(e);
      extend(e + 2);
      current.pop_back();
    }
  };
  extend(2);
  std::sort(out.begin(), out.end());
  return out;
}

/// Height profiles of T_{m,n} in lexicographic order.
inline std::vector<std::vector<int>> height_profiles(int m, int n) {
  std::vector<int> values{0};
  for (int h = 2; h <= n; ++h) values.push_back(h);
  std::vector<std::vector<int>> out;
  std::vector<int> current;
  std::function<void(std::size_t)> extend = [&](std::size_t from) {
    if (current.size() == static_cast<std::size_t>(m)) {
      out.push_back(current);
      return;
    }
    for (std::size_t v = from; v < values.size(); ++v) {
      current.push_back(values[v]);
      extend(v);
      current.pop_back();
    }
  };
  extend(0);
  return out;
}

/// |T_{m,n}|, the integer Fibonomial coefficient.
inline BigInt tiling_count(int m, int n) {
  return fibonomial_number(static_cast<std::size_t>(m), static_cast<std::size_t>(n));
}

inline void check_enumeration_cap(int m, int n, std::uint64_t cap) {
  if (m < 0 || n < 0) throw DomainError("board dimensions must be nonnegative");
  BigInt projected = tiling_count(m, n);
  if (projected > cap) throw EnumerationCapExceeded(std::move(projected), cap);
}

/// Calls visit(tiling) for every tiling of T_{m,n} exactly once. Order:
/// profiles lexicographically; within a profile, the tuple (row 1, ..., row n,
/// column 1, ..., column m) of domino lists lexicographically. The Tiling
/// passed to the visitor is reused between calls.
template <class Visitor>
void for_each_tiling(int m, int n, Visitor&& visit, std::uint64_t cap = kDefaultEnumerationCap) {
  check_enumeration_cap(m, n, cap);
  const int longest = std::max(m, n);
  std::vector<std::vector<std::vector<int>>> strips;
  for (int len = 0; len <= longest; ++len) strips.push_back(strip_tilings(len));

  Tiling t = Tiling::empty(m, n);
  for (const auto& profile : height_profiles(m, n)) {
    t.heights = profile;
    // slot s < n is row s+1, slot n + c is column c+1
    std::vector<const std::vector<std::vector<int>>*> options;
    for (int r = 1; r <= n; ++r) options.push_back(&strips[static_cast<std::size_t>(t.above_length(r))]);
    for (int c = 1; c <= m; ++c) {
      options.push_back(&strips[static_cast<std::size_t>(std::max(0, t.height(c) - 2))]);
    }
    std::vector<std::size_t> digit(options.size(), 0);
    auto advance = [&] {
      for (std::size_t s = digit.size(); s-- > 0;) {
        if (++digit[s] < options[s]->size()) return true;
        digit[s] = 0;
      }
      return false;
    };
    do {
      for (std::size_t s = 0; s < options.size(); ++s) {
        const auto& choice = (*options[s])[digit[s]];
        if (s < static_cast<std::size_t>(n)) {
          t.row_dominoes[s] = choice;
        } else {
          t.column_dominoes[s - static_cast<std::size_t>(n)] = choice;
        }
      }
      visit(static_cast<const Tiling&>(t));
    } while (advance());
  }
}

inline std::vector<Tiling> enumerate_tilings(int m, int n, std::uint64_t cap = kDefaultEnumerationCap) {
  std::vector<Tiling> out;
  for_each_tiling(m, n, [&](const Tiling& t) { out.push_back(t); }, cap);
  return out;
}

/// Sum of q^{weight_degree(T)} over T_{m,n}, by brute force.
inline Polynomial tiling_polynomial(int m, int n, std::uint64_t cap = kDefaultEnumerationCap) {
  std::vector<std::uint64_t> counts;
  for_each_tiling(
      m, n,
      [&](const Tiling& t) {
        const auto d = weight_degree(t);
        if (d >= counts.size()) counts.resize(d + 1, 0);
        ++counts[d];
      },
      cap);
  std::vector<BigInt> coeffs(counts.begin(), counts.end());
  return Polynomial(std::move(coeffs));
}

// ---------------------------------------------------------------------------
// Text form: "h=0,0,3,4;r1=2;c4=2". Rows and columns without dominoes are
// omitted. Used by the CLI's tiling selector.

inline std::string to_string(const Tiling& t) {
  std::ostringstream out;
  out << "h=";
  for (int c = 1; c <= t.m; ++c) out << (c > 1 ? "," : "") << t.height(c);
  auto list = [&](const std::vector<int>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  };
  for (int r = 1; r <= t.n; ++r) {
    if (t.row(r).empty()) continue;
    out << ";r" << r << "=";
    list(t.row(r));
  }
  for (int c = 1; c <= t.m; ++c) {
    if (t.column(c).empty()) continue;
    out << ";c" << c << "=";
    list(t.column(c));
  }
  return out.str();
}

namespace detail {

inline int parse_int(std::string_view text) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument("bad integer in tiling text: '" + std::string(text) + "'");
  }
  return value;
}

inline std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    out.push_back(parse_int(text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace detail

/// Inverse of to_string for a board of the given size; validates the result.
inline Tiling parse_tiling(int m, int n, std::string_view text) {
  Tiling t = Tiling::empty(m, n);
  bool saw_heights = false;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto semi = text.find(';', start);
    const auto field = text.substr(start, semi == std::string_view::npos ? std::string_view::npos : semi - start);
    const auto eq = field.find('=');
    if (eq == std::string_view::npos || eq == 0) throw std::invalid_argument("bad tiling field: '" + std::string(field) + "'");
    const auto key = field.substr(0, eq);
    auto values = detail::parse_int_list(field.substr(eq + 1));
    if (key == "h") {
      if (values.size() != static_cast<std::size_t>(m)) throw std::invalid_argument("height count does not match m");
      t.heights = std::move(values);
      saw_heights = true;
    } else if (key.front() == 'r' || key.front() == 'c') {
      const int index = detail::parse_int(key.substr(1));
      const int limit = key.front() == 'r' ? n : m;
      if (index < 1 || index > limit) throw std::invalid_argument("index out of range in '" + std::string(key) + "'");
      auto& target = key.front() == 'r' ? t.row_dominoes : t.column_dominoes;
      target[static_cast<std::size_t>(index - 1)] = std::move(values);
    } else {
      throw std::invalid_argument("unknown tiling field '" + std::string(key) + "'");
    }
    if (semi == std::string_view::npos) break;
    start = semi + 1;
  }
  if (!saw_heights && m > 0) throw std::invalid_argument("tiling text lacks the h= field");
  validate(t);
  return t;
}

}  // namespace fibwork
