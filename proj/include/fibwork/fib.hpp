#pragma once

// Fibonacci numbers F_0 = 0, F_1 = 1, F_n = F_{n-1} + F_{n-2}, the integer
// Fibonomial coefficients built from them, and Zeckendorf decomposition.

#include <array>
#include <cstdint>
#include <deque>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <vector>

#include "fibwork/bigint.hpp"

namespace fibwork {

/// Memoized arbitrary-precision Fibonacci sequence. The cache only ever grows;
/// readers share a lock, growth takes it exclusively.
class FibSequence {
 public:
  FibSequence() : cache_{BigInt(0), BigInt(1)} {}

  BigInt operator()(std::size_t n) const {
    {
      std::shared_lock lock(mutex_);
      if (n < cache_.size()) return cache_[n];
    }
    std::unique_lock lock(mutex_);
    while (cache_.size() <= n) {
      const std::size_t size = cache_.size();
      cache_.push_back(cache_[size - 1] + cache_[size - 2]);
    }
    return cache_[n];
  }

  std::size_t cached() const {
    std::shared_lock lock(mutex_);
    return cache_.size();
  }

 private:
  mutable std::shared_mutex mutex_;
  mutable std::deque<BigInt> cache_;
};

/// Process-wide sequence shared by all workers.
inline const FibSequence& fib_table() {
  static const FibSequence table;
  return table;
}

inline BigInt fib(std::size_t n) { return fib_table()(n); }

namespace detail {

inline constexpr std::size_t kMaxFib64 = 93;  // F_93 < 2^64 <= F_94

constexpr std::array<std::uint64_t, kMaxFib64 + 1> make_fib64_table() {
  std::array<std::uint64_t, kMaxFib64 + 1> table{};
  table[0] = 0;
  table[1] = 1;
  for (std::size_t i = 2; i <= kMaxFib64; ++i) table[i] = table[i - 1] + table[i - 2];
  return table;
}

inline constexpr auto kFib64 = make_fib64_table();

}  // namespace detail

/// F_n as a machine word; throws std::overflow_error past F_93.
constexpr std::uint64_t fib64(std::size_t n) {
  if (n > detail::kMaxFib64) throw std::overflow_error("F_n exceeds 64 bits");
  return detail::kFib64[n];
}

/// F_n as a plain int for small indices used as q-analog lengths.
inline std::size_t fib_size(std::size_t n) {
  const std::uint64_t value = fib64(n);
  return static_cast<std::size_t>(value);
}

/// F_1 * F_2 * ... * F_n (empty product 1).
inline BigInt fib_factorial(std::size_t n) {
  BigInt result = 1;
  for (std::size_t k = 1; k <= n; ++k) result *= fib(k);
  return result;
}

/// Lucas' Fibonomial coefficient F_{m+n}! / (F_m! F_n!).
inline BigInt fibonomial_number(std::size_t m, std::size_t n) {
  return fib_factorial(m + n) / (fib_factorial(m) * fib_factorial(n));
}

/// Zeckendorf representation of N: strictly decreasing Fibonacci indices,
/// each >= 2, no two consecutive. Greedy is exact because the representation
/// is unique.
inline std::vector<std::size_t> zeckendorf(const BigInt& value) {
  if (value < 0) throw DomainError("zeckendorf: negative input");
  std::vector<std::size_t> indices;
  if (value == 0) return indices;
  std::size_t k = 2;
  while (fib(k + 1) <= value) ++k;
  BigInt rest = value;
  while (rest > 0) {
    while (fib(k) > rest) --k;
    indices.push_back(k);
    rest -= fib(k);
    k -= 2;  // next index must skip F_{k-1}
  }
  return indices;
}

inline std::vector<std::size_t> zeckendorf(std::uint64_t value) {
  return zeckendorf(BigInt(value));
}

}  // namespace fibwork
