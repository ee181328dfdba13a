#pragma once

// Dense univariate polynomials in q with exact integer coefficients.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fibwork/bigint.hpp"
#include "fibwork/fib.hpp"

namespace fibwork {

/// Coefficient sequence indexed by exponent with no trailing zeros. The
/// empty sequence is the zero polynomial, whose degree() is -1.
template <class Coeff>
class BasicPolynomial {
 public:
  using coefficient_type = Coeff;

  BasicPolynomial() = default;
  explicit BasicPolynomial(std::vector<Coeff> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
  BasicPolynomial(std::initializer_list<Coeff> coeffs) : coeffs_(coeffs) { trim(); }

  static BasicPolynomial constant(Coeff value) { return BasicPolynomial(std::vector<Coeff>{std::move(value)}); }
  static BasicPolynomial one() { return constant(Coeff(1)); }

  /// c * q^exponent
  static BasicPolynomial monomial(std::size_t exponent, Coeff c = Coeff(1)) {
    std::vector<Coeff> coeffs(exponent + 1, Coeff(0));
    coeffs[exponent] = std::move(c);
    return BasicPolynomial(std::move(coeffs));
  }

  bool is_zero() const noexcept { return coeffs_.empty(); }
  std::int64_t degree() const noexcept { return static_cast<std::int64_t>(coeffs_.size()) - 1; }
  std::size_t size() const noexcept { return coeffs_.size(); }

  /// Coefficient of q^k; zero beyond the degree.
  Coeff coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Coeff(0); }
  const Coeff& operator[](std::size_t k) const { return coeffs_[k]; }

  std::span<const Coeff> coefficients() const noexcept { return coeffs_; }
  const std::vector<Coeff>& data() const noexcept { return coeffs_; }

  /// Value at q = 1.
  Coeff at_one() const {
    Coeff sum(0);
    for (const auto& c : coeffs_) sum += c;
    return sum;
  }

  bool has_nonnegative_coefficients() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Coeff& c) { return c >= 0; });
  }

  friend bool operator==(const BasicPolynomial&, const BasicPolynomial&) = default;

  BasicPolynomial& operator+=(const BasicPolynomial& other) {
    if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), Coeff(0));
    for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
    trim();
    return *this;
  }

  BasicPolynomial& operator-=(const BasicPolynomial& other) {
    if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), Coeff(0));
    for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
    trim();
    return *this;
  }

  friend BasicPolynomial operator+(BasicPolynomial lhs, const BasicPolynomial& rhs) { return lhs += rhs; }
  friend BasicPolynomial operator-(BasicPolynomial lhs, const BasicPolynomial& rhs) { return lhs -= rhs; }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<Coeff> coeffs_;
};

using Polynomial = BasicPolynomial<BigInt>;

/// Converts between coefficient types (e.g. a 64-bit fixture to BigInt).
template <class To, class From>
BasicPolynomial<To> convert(const BasicPolynomial<From>& p) {
  std::vector<To> coeffs;
  coeffs.reserve(p.size());
  for (const auto& c : p.coefficients()) coeffs.emplace_back(c);
  return BasicPolynomial<To>(std::move(coeffs));
}

/// Exact division left a nonzero remainder. This is reported as data: callers
/// probing integrality claims catch it and keep the remainder.
class NotDivisible : public std::runtime_error {
 public:
  explicit NotDivisible(Polynomial remainder)
      : std::runtime_error("polynomial division is not exact"), remainder_(std::move(remainder)) {}

  const Polynomial& remainder() const noexcept { return remainder_; }

 private:
  Polynomial remainder_;
};

// ---------------------------------------------------------------------------
// Multiplication

/// Operands whose degrees both exceed this use Karatsuba.
inline constexpr std::size_t kKaratsubaThreshold = 1024;

namespace detail {

template <class Coeff>
void schoolbook_accumulate(std::span<const Coeff> a, std::span<const Coeff> b, std::span<Coeff> out) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    const Coeff& ai = a[i];
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j] == 0) continue;
      out[i + j] += ai * b[j];
    }
  }
}

// out[0 .. 2n-1) += a * b for |a| = |b| = n.
template <class Coeff>
void karatsuba_accumulate(std::span<const Coeff> a, std::span<const Coeff> b, std::span<Coeff> out,
                          std::size_t threshold) {
  const std::size_t n = a.size();
  if (n <= threshold) {
    schoolbook_accumulate(a, b, out);
    return;
  }
  const std::size_t half = n / 2;
  const std::size_t upper = n - half;
  auto a0 = a.first(half), a1 = a.subspan(half);
  auto b0 = b.first(half), b1 = b.subspan(half);

  std::vector<Coeff> low(2 * half, Coeff(0));
  std::vector<Coeff> high(2 * upper, Coeff(0));
  karatsuba_accumulate<Coeff>(a0, b0, low, threshold);
  karatsuba_accumulate<Coeff>(a1, b1, high, threshold);

  std::vector<Coeff> sa(upper, Coeff(0)), sb(upper, Coeff(0));
  for (std::size_t i = 0; i < upper; ++i) {
    sa[i] = a1[i];
    sb[i] = b1[i];
  }
  for (std::size_t i = 0; i < half; ++i) {
    sa[i] += a0[i];
    sb[i] += b0[i];
  }
  std::vector<Coeff> mid(2 * upper, Coeff(0));
  karatsuba_accumulate<Coeff>(sa, sb, mid, threshold);
  for (std::size_t i = 0; i < low.size(); ++i) mid[i] -= low[i];
  for (std::size_t i = 0; i < high.size(); ++i) mid[i] -= high[i];

  for (std::size_t i = 0; i < low.size(); ++i) out[i] += low[i];
  for (std::size_t i = 0; i < mid.size() && half + i < out.size(); ++i) out[half + i] += mid[i];
  for (std::size_t i = 0; i < high.size(); ++i) out[2 * half + i] += high[i];
}

}  // namespace detail

/// Schoolbook product regardless of size; reference route for tests.
template <class Coeff>
BasicPolynomial<Coeff> mul_schoolbook(const BasicPolynomial<Coeff>& p, const BasicPolynomial<Coeff>& r) {
  if (p.is_zero() || r.is_zero()) return {};
  std::vector<Coeff> out(p.size() + r.size() - 1, Coeff(0));
  detail::schoolbook_accumulate<Coeff>(p.coefficients(), r.coefficients(), out);
  return BasicPolynomial<Coeff>(std::move(out));
}

/// Exact product. Switches to Karatsuba when both degrees exceed `threshold`;
/// the longer operand is cut into blocks the length of the shorter one.
template <class Coeff>
BasicPolynomial<Coeff> mul(const BasicPolynomial<Coeff>& p, const BasicPolynomial<Coeff>& r,
                           std::size_t threshold = kKaratsubaThreshold) {
  if (p.is_zero() || r.is_zero()) return {};
  std::span<const Coeff> longer = p.coefficients();
  std::span<const Coeff> shorter = r.coefficients();
  if (longer.size() < shorter.size()) std::swap(longer, shorter);
  std::vector<Coeff> out(longer.size() + shorter.size() - 1, Coeff(0));
  if (shorter.size() <= threshold + 1) {
    detail::schoolbook_accumulate(longer, shorter, std::span<Coeff>(out));
    return BasicPolynomial<Coeff>(std::move(out));
  }
  const std::size_t block = shorter.size();
  std::vector<Coeff> padded(block, Coeff(0));
  std::vector<Coeff> partial(2 * block, Coeff(0));
  for (std::size_t start = 0; start < longer.size(); start += block) {
    const std::size_t len = std::min(block, longer.size() - start);
    std::fill(padded.begin(), padded.end(), Coeff(0));
    std::copy_n(longer.begin() + static_cast<std::ptrdiff_t>(start), len, padded.begin());
    std::fill(partial.begin(), partial.end(), Coeff(0));
    detail::karatsuba_accumulate<Coeff>(padded, shorter, partial, threshold);
    for (std::size_t i = 0; i < partial.size() && start + i < out.size(); ++i) out[start + i] += partial[i];
  }
  return BasicPolynomial<Coeff>(std::move(out));
}

template <class Coeff>
BasicPolynomial<Coeff> operator*(const BasicPolynomial<Coeff>& p, const BasicPolynomial<Coeff>& r) {
  return mul(p, r);
}

// ---------------------------------------------------------------------------
// Division

template <class Coeff>
struct DivisionResult {
  BasicPolynomial<Coeff> quotient;
  BasicPolynomial<Coeff> remainder;
};

/// Division from the low end: requires the lowest nonzero coefficient of d
/// to be +-1 so every step stays integral. Produces p = quotient * d +
/// remainder, where the remainder vanishes below q^{deg p - deg d + 1}.
template <class Coeff>
DivisionResult<Coeff> divide_low(const BasicPolynomial<Coeff>& p, const BasicPolynomial<Coeff>& d) {
  if (d.is_zero()) throw DomainError("division by the zero polynomial");
  std::size_t shift = 0;
  while (d[shift] == 0) ++shift;
  const Coeff& lead = d[shift];
  if (lead != 1 && lead != -1) throw DomainError("divisor must have lowest coefficient +-1");
  if (p.is_zero()) return {};

  std::vector<Coeff> rest(p.data());
  // Low-order coefficients below the divisor's valuation can never be cleared.
  for (std::size_t i = 0; i < shift && i < rest.size(); ++i) {
    if (rest[i] != 0) {
      return {BasicPolynomial<Coeff>(), p};
    }
  }
  const std::size_t d_size = d.size();
  if (rest.size() < d_size) return {BasicPolynomial<Coeff>(), p};
  const std::size_t q_size = rest.size() - d_size + 1;
  std::vector<Coeff> quotient(q_size, Coeff(0));
  const auto dc = d.coefficients();
  for (std::size_t k = 0; k < q_size; ++k) {
    Coeff factor = rest[k + shift];
    if (factor == 0) continue;
    if (lead == -1) factor = -factor;
    quotient[k] = factor;
    for (std::size_t j = shift; j < d_size; ++j) {
      if (dc[j] == 0) continue;
      rest[k + j] -= factor * dc[j];
    }
  }
  return {BasicPolynomial<Coeff>(std::move(quotient)), BasicPolynomial<Coeff>(std::move(rest))};
}

/// Quotient p / d; throws NotDivisible carrying the remainder when p is not
/// a multiple of d.
template <class Coeff>
BasicPolynomial<Coeff> exact_div(const BasicPolynomial<Coeff>& p, const BasicPolynomial<Coeff>& d) {
  auto result = divide_low(p, d);
  if (!result.remainder.is_zero()) throw NotDivisible(convert<BigInt>(result.remainder));
  return std::move(result.quotient);
}

// ---------------------------------------------------------------------------
// q-analogs

/// [n]_{q^r} = 1 + q^r + q^{2r} + ... + q^{r(n-1)}.
template <class Coeff = BigInt>
BasicPolynomial<Coeff> q_analog(std::size_t n, std::size_t r = 1) {
  if (n == 0 || r == 0) throw DomainError("q_analog requires n >= 1 and r >= 1");
  std::vector<Coeff> coeffs(r * (n - 1) + 1, Coeff(0));
  for (std::size_t j = 0; j < n; ++j) coeffs[r * j] = 1;
  return BasicPolynomial<Coeff>(std::move(coeffs));
}

/// p * [n]_{q^r} by running sums, O(deg p + r n) additions.
template <class Coeff>
BasicPolynomial<Coeff> mul_q_analog(const BasicPolynomial<Coeff>& p, std::size_t n, std::size_t r = 1) {
  if (n == 0 || r == 0) throw DomainError("q_analog requires n >= 1 and r >= 1");
  if (p.is_zero()) return {};
  const std::size_t span = r * (n - 1);
  std::vector<Coeff> out(p.size() + span, Coeff(0));
  const auto pc = p.coefficients();
  // out[i] = sum_{j<n} p[i - r j]; per residue class this is a window sum.
  for (std::size_t i = 0; i < out.size(); ++i) {
    Coeff value = i >= r ? out[i - r] : Coeff(0);
    if (i < pc.size()) value += pc[i];
    if (i >= r * n && i - r * n < pc.size()) value -= pc[i - r * n];
    out[i] = std::move(value);
  }
  return BasicPolynomial<Coeff>(std::move(out));
}

/// p / [n]_{q^r}, computed as p (1 - q^r) / (1 - q^{rn}). Throws NotDivisible
/// if the quotient is not a polynomial.
template <class Coeff>
BasicPolynomial<Coeff> div_q_analog(const BasicPolynomial<Coeff>& p, std::size_t n, std::size_t r = 1) {
  if (n == 0 || r == 0) throw DomainError("q_analog requires n >= 1 and r >= 1");
  if (n == 1 || p.is_zero()) return p;
  const std::size_t period = r * n;
  const auto pc = p.coefficients();
  // numerator = p (1 - q^r)
  std::vector<Coeff> numer(p.size() + r, Coeff(0));
  for (std::size_t i = 0; i < pc.size(); ++i) {
    numer[i] += pc[i];
    numer[i + r] -= pc[i];
  }
  // quotient c satisfies c[i] - c[i - period] = numer[i]
  const std::size_t span = r * (n - 1);
  if (p.size() <= span) throw NotDivisible(convert<BigInt>(p));
  const std::size_t q_size = p.size() - span;
  std::vector<Coeff> quotient(q_size, Coeff(0));
  for (std::size_t i = 0; i < q_size; ++i) {
    quotient[i] = numer[i];
    if (i >= period) quotient[i] += quotient[i - period];
  }
  BasicPolynomial<Coeff> result(std::move(quotient));
  auto check = mul_q_analog(result, n, r);
  if (!(check == p)) throw NotDivisible(convert<BigInt>(p - check));
  return result;
}

/// [F_1]_q [F_2]_q ... [F_n]_q (empty product 1).
template <class Coeff = BigInt>
BasicPolynomial<Coeff> fib_q_factorial(std::size_t n) {
  auto result = BasicPolynomial<Coeff>::one();
  for (std::size_t k = 1; k <= n; ++k) result = mul(result, q_analog<Coeff>(fib_size(k)));
  return result;
}

// ---------------------------------------------------------------------------
// Shape predicates

namespace detail {

template <class Coeff>
void require_nonzero(const BasicPolynomial<Coeff>& p, const char* what) {
  if (p.is_zero()) throw DomainError(std::string(what) + ": zero polynomial has no shape");
}

template <class Coeff>
void require_nonnegative(const BasicPolynomial<Coeff>& p, const char* what) {
  require_nonzero(p, what);
  if (!p.has_nonnegative_coefficients()) throw DomainError(std::string(what) + ": negative coefficient");
}

}  // namespace detail

/// c_k = c_{N-k} for all k.
template <class Coeff>
bool is_symmetric(const BasicPolynomial<Coeff>& p) {
  detail::require_nonzero(p, "is_symmetric");
  const auto c = p.coefficients();
  return std::equal(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(c.size() / 2), c.rbegin());
}

struct UnimodalityVerdict {
  bool unimodal = true;
  /// Index i of the first strict rise c_{i+1} > c_i seen after a strict fall.
  std::optional<std::size_t> violation;

  explicit operator bool() const noexcept { return unimodal; }
};

/// Single pass over the coefficients in states {rising, falling}; plateaus
/// are allowed in both.
template <class Coeff>
UnimodalityVerdict is_unimodal(const BasicPolynomial<Coeff>& p) {
  detail::require_nonnegative(p, "is_unimodal");
  const auto c = p.coefficients();
  bool falling = false;
  for (std::size_t i = 0; i + 1 < c.size(); ++i) {
    if (c[i + 1] < c[i]) {
      falling = true;
    } else if (c[i + 1] > c[i] && falling) {
      return {false, i};
    }
  }
  return {true, std::nullopt};
}

/// Smallest interior k with c_k^2 < c_{k-1} c_{k+1}, if any.
template <class Coeff>
std::optional<std::size_t> log_concavity_violation(const BasicPolynomial<Coeff>& p) {
  detail::require_nonnegative(p, "is_log_concave");
  const auto c = p.coefficients();
  for (std::size_t k = 1; k + 1 < c.size(); ++k) {
    if (c[k] * c[k] < c[k - 1] * c[k + 1]) return k;
  }
  return std::nullopt;
}

template <class Coeff>
bool is_log_concave(const BasicPolynomial<Coeff>& p) {
  return !log_concavity_violation(p).has_value();
}

/// Largest coefficient (zero for the zero polynomial).
template <class Coeff>
Coeff peak_coefficient(const BasicPolynomial<Coeff>& p) {
  if (p.is_zero()) return Coeff(0);
  return *std::max_element(p.coefficients().begin(), p.coefficients().end());
}

}  // namespace fibwork
