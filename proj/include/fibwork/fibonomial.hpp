#pragma once

// q-Fibonomial coefficients [F_{m+n}]!_q / ([F_m]!_q [F_n]!_q), the n = 2
// closed form, the n = 3 factorization, and q-FiboCatalan numbers.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <shared_mutex>
#include <utility>

#include "fibwork/fib.hpp"
#include "fibwork/qpoly.hpp"

namespace fibwork {

struct FibonomialQuery {
  std::size_t m = 0;
  std::size_t n = 0;

  friend auto operator<=>(const FibonomialQuery&, const FibonomialQuery&) = default;
};

/// deg qfibonomial(m, n) = F_{m+n+2} - F_{m+2} - F_{n+2} + 1.
inline std::uint64_t qfibonomial_degree(std::size_t m, std::size_t n) {
  return fib64(m + n + 2) - fib64(m + 2) - fib64(n + 2) + 1;
}

/// Single quotient of the numerator factorial by the full denominator
/// product. Uncached.
inline Polynomial compute_qfibonomial(std::size_t m, std::size_t n) {
  if (m == 0 || n == 0) return Polynomial::one();
  const auto numerator = fib_q_factorial(m + n);
  const auto denominator = mul(fib_q_factorial(m), fib_q_factorial(n));
  return exact_div(numerator, denominator);
}

/// Second route: qfibonomial(m, j) = qfibonomial(m, j-1) [F_{m+j}]_q / [F_j]_q,
/// every intermediate being itself a q-Fibonomial. Linear-time steps, so it
/// reaches much larger (m, n) than the single quotient.
inline Polynomial qfibonomial_by_peeling(std::size_t m, std::size_t n) {
  if (m < n) std::swap(m, n);
  auto result = Polynomial::one();
  for (std::size_t j = 1; j <= n; ++j) {
    result = mul_q_analog(result, fib_size(m + j));
    result = div_q_analog(result, fib_size(j));
  }
  return result;
}

namespace detail {

class FibonomialMemo {
 public:
  std::shared_ptr<const Polynomial> get_or_compute(FibonomialQuery key) {
    {
      std::shared_lock lock(mutex_);
      if (auto it = table_.find(key); it != table_.end()) return it->second;
    }
    auto value = std::make_shared<const Polynomial>(compute_qfibonomial(key.m, key.n));
    std::unique_lock lock(mutex_);
    auto [it, inserted] = table_.emplace(key, std::move(value));
    return it->second;
  }

  void clear() {
    std::unique_lock lock(mutex_);
    table_.clear();
  }

 private:
  std::shared_mutex mutex_;
  std::map<FibonomialQuery, std::shared_ptr<const Polynomial>> table_;
};

inline FibonomialMemo& fibonomial_memo() {
  static FibonomialMemo memo;
  return memo;
}

}  // namespace detail

/// Memoized q-Fibonomial. m = 0 or n = 0 gives the constant 1.
inline Polynomial qfibonomial(std::size_t m, std::size_t n) {
  return *detail::fibonomial_memo().get_or_compute({m, n});
}

/// n = 2 closed form: a_k = k+1 up to F_{m+1}-1, then the plateau F_{m+1}
/// up to F_{m+2}-2, then F_{m+3}-k-1 down to degree F_{m+3}-2.
inline Polynomial closed_form_n2(std::size_t m) {
  if (m == 0) throw DomainError("closed_form_n2 requires m >= 1");
  const std::uint64_t f1 = fib64(m + 1), f2 = fib64(m + 2), f3 = fib64(m + 3);
  std::vector<BigInt> coeffs(f3 - 1);
  for (std::uint64_t k = 0; k <= f3 - 2; ++k) {
    if (k + 1 <= f1) {
      coeffs[k] = k + 1;
    } else if (k + 2 <= f2) {
      coeffs[k] = f1;
    } else {
      coeffs[k] = f3 - k - 1;
    }
  }
  return Polynomial(std::move(coeffs));
}

/// qfibonomial(m, 3) = [A]_q [B]_q [E/2]_{q^2}: A <= B are the odd members of
/// F_{m+1}, F_{m+2}, F_{m+3} and E is the even one.
struct N3Factorization {
  std::uint64_t odd_low = 0;
  std::uint64_t odd_high = 0;
  std::uint64_t half_even = 0;

  Polynomial product() const {
    auto p = mul(q_analog(odd_low), q_analog(odd_high));
    return mul(p, q_analog(half_even, 2));
  }

  friend bool operator==(const N3Factorization&, const N3Factorization&) = default;
};

inline N3Factorization n3_factorization(std::size_t m) {
  if (m == 0) throw DomainError("n3_factorization requires m >= 1");
  std::vector<std::uint64_t> odd;
  std::optional<std::uint64_t> even;
  for (std::size_t i = m + 1; i <= m + 3; ++i) {
    const std::uint64_t f = fib64(i);
    if (f % 2 == 0) {
      if (even) throw std::logic_error("two even Fibonacci numbers among three consecutive");
      even = f;
    } else {
      odd.push_back(f);
    }
  }
  if (!even || odd.size() != 2) throw std::logic_error("expected exactly one even Fibonacci number");
  std::sort(odd.begin(), odd.end());
  return {odd[0], odd[1], *even / 2};
}

/// q-FiboCatalan outcome: the quotient when [F_{m+n}]_q divides the
/// q-Fibonomial, otherwise the nonzero remainder.
struct FiboCatalan {
  std::optional<Polynomial> quotient;
  Polynomial remainder;

  bool divisible() const noexcept { return quotient.has_value(); }
};

inline FiboCatalan qfibocatalan(std::size_t m, std::size_t n) {
  if (m == 0 || n == 0) throw DomainError("qfibocatalan requires m, n >= 1");
  const auto numerator = qfibonomial(m, n);
  auto division = divide_low(numerator, q_analog(fib_size(m + n)));
  if (division.remainder.is_zero()) return {std::move(division.quotient), {}};
  return {std::nullopt, std::move(division.remainder)};
}

/// gcd(m, n) in {1, 2}: the range where the q-FiboCatalan number is known to
/// be a polynomial.
inline bool fibocatalan_integral_class(std::size_t m, std::size_t n) {
  const auto g = std::gcd(m, n);
  return g == 1 || g == 2;
}

/// q-FiboCatalan coefficients straight from the q-Fibonomial coefficients:
/// c_i = sum_{k >= 0} (a_{i - kF} - a_{i - kF - 1}) with F = F_{m+n} and
/// a_j = 0 for j < 0.
inline Polynomial fibocat_coeffs_via_telescoping(std::size_t m, std::size_t n) {
  if (m == 0 || n == 0) throw DomainError("fibocatalan requires m, n >= 1");
  if (!fibocatalan_integral_class(m, n)) throw DomainError("telescoping formula requires gcd(m, n) in {1, 2}");
  const auto a = qfibonomial(m, n);
  const std::uint64_t period = fib64(m + n);
  const std::int64_t top = a.degree() - static_cast<std::int64_t>(period - 1);
  if (top < 0) throw std::logic_error("q-Fibonomial degree below [F_{m+n}]_q degree");
  auto at = [&](std::int64_t j) { return j < 0 ? BigInt(0) : a.coeff(static_cast<std::size_t>(j)); };
  std::vector<BigInt> c(static_cast<std::size_t>(top) + 1);
  for (std::int64_t i = 0; i <= top; ++i) {
    BigInt sum = 0;
    for (std::int64_t shift = i; shift >= 0; shift -= static_cast<std::int64_t>(period)) {
      sum += at(shift) - at(shift - 1);
    }
    c[static_cast<std::size_t>(i)] = std::move(sum);
  }
  return Polynomial(std::move(c));
}

}  // namespace fibwork
