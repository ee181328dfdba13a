#pragma once

// Unimodality of products of q-analogs [a_1]_q ... [a_k]_q [b]_{q^r}: closed
// forms and exact characterizations, each paired with direct expansion, plus
// a scanner for the general divisibility/inequality criterion.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <json.hpp>

#include "fibwork/qpoly.hpp"

namespace fibwork {

/// [a_1]_q ... [a_k]_q [b]_{q^r}. Plain factors are kept sorted ascending.
struct ProductSpec {
  std::vector<std::uint64_t> plain_factors;
  std::uint64_t b = 1;
  std::uint64_t r = 1;

  ProductSpec() = default;
  ProductSpec(std::vector<std::uint64_t> factors, std::uint64_t b_, std::uint64_t r_)
      : plain_factors(std::move(factors)), b(b_), r(r_) {
    if (b == 0 || r == 0 || std::any_of(plain_factors.begin(), plain_factors.end(), [](auto a) { return a == 0; })) {
      throw DomainError("product factors must be positive");
    }
    std::sort(plain_factors.begin(), plain_factors.end());
  }

  Polynomial expand() const {
    auto p = q_analog(b, r);
    for (auto a : plain_factors) p = mul_q_analog(p, a);
    return p;
  }

  friend bool operator==(const ProductSpec&, const ProductSpec&) = default;
};

/// Coefficients of [a]_q [b]_q by the piecewise formula (a and b are swapped
/// if needed so that a <= b).
inline Polynomial prod2_coeffs(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) throw DomainError("prod2_coeffs requires positive factors");
  if (a > b) std::swap(a, b);
  std::vector<BigInt> c(a + b - 1);
  for (std::uint64_t k = 0; k + 2 <= a + b; ++k) {
    if (k + 1 <= a) {
      c[k] = k + 1;
    } else if (k + 1 <= b) {
      c[k] = a;
    } else {
      c[k] = a + b - 1 - k;
    }
  }
  return Polynomial(std::move(c));
}

/// [a]_q [b]_{q^r} is unimodal iff a >= r (b - 1) or r | a.
inline bool two_factor_unimodal_iff(std::uint64_t a, std::uint64_t b, std::uint64_t r) {
  if (a == 0 || b == 0 || r == 0) throw DomainError("two_factor_unimodal_iff requires positive arguments");
  return a >= r * (b - 1) || a % r == 0;
}

/// [a]_q [b]_q [c]_{q^2} is unimodal iff 2c <= a + b, or a or b is even.
inline bool triple_unimodal_iff(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  if (a == 0 || b == 0 || c == 0) throw DomainError("triple_unimodal_iff requires positive arguments");
  return 2 * c <= a + b || a % 2 == 0 || b % 2 == 0;
}

// ---------------------------------------------------------------------------
// Counting functions A(k), B(k) for odd a <= b. With T = [a]_q [b]_q [c]_{q^2},
// [q^{k+1}]T - [q^k]T = A(k) - B(k).

namespace detail {

inline std::int64_t floor_div2(std::int64_t x) { return x >= 0 ? x / 2 : -((-x + 1) / 2); }
inline std::int64_t ceil_div2(std::int64_t x) { return -floor_div2(-x); }

/// #{l in [0, c-1] : lo2 <= 2l <= hi2}, bounds given doubled.
inline std::int64_t count_doubled(std::int64_t lo2, std::int64_t hi2, std::int64_t c) {
  const std::int64_t lo = std::max<std::int64_t>(0, ceil_div2(lo2));
  const std::int64_t hi = std::min<std::int64_t>(c - 1, floor_div2(hi2));
  return std::max<std::int64_t>(0, hi - lo + 1);
}

inline void require_odd_pair(std::int64_t a, std::int64_t b, std::int64_t c) {
  if (a < 1 || b < 1 || c < 1) throw DomainError("count_A/count_B require positive a, b, c");
  if (a % 2 == 0 || b % 2 == 0) throw DomainError("count_A/count_B require odd a and b");
  if (a > b) throw DomainError("count_A/count_B require a <= b");
}

}  // namespace detail

/// #{l in [0, c-1] : (k - a + 2)/2 <= l <= (k + 1)/2}.
inline std::int64_t count_A(std::int64_t k, std::int64_t a, std::int64_t c) {
  if (a < 1 || c < 1) throw DomainError("count_A requires positive a and c");
  if (a % 2 == 0) throw DomainError("count_A requires odd a");
  return detail::count_doubled(k - a + 2, k + 1, c);
}

/// #{l in [0, c-1] : (k - a - b + 2)/2 <= l <= (k - b + 1)/2}.
inline std::int64_t count_B(std::int64_t k, std::int64_t a, std::int64_t b, std::int64_t c) {
  detail::require_odd_pair(a, b, c);
  return detail::count_doubled(k - a - b + 2, k - b + 1, c);
}

/// Piecewise form of B(k) when 2c <= a + b, valid for k <= c + (a+b)/2 - 3.
inline std::optional<std::int64_t> count_B_closed_form(std::int64_t k, std::int64_t a, std::int64_t b,
                                                       std::int64_t c) {
  detail::require_odd_pair(a, b, c);
  if (2 * c > a + b || k > c + (a + b) / 2 - 3) return std::nullopt;
  if (k < b - 1) return 0;
  return detail::floor_div2(k - b + 1) + 1;
}

/// Piecewise form of A(k) when 2c <= a + b, valid for b-1 <= k <= c + (a+b)/2 - 3.
inline std::optional<std::int64_t> count_A_closed_form(std::int64_t k, std::int64_t a, std::int64_t b,
                                                       std::int64_t c) {
  detail::require_odd_pair(a, b, c);
  if (2 * c > a + b || k < b - 1 || k > c + (a + b) / 2 - 3) return std::nullopt;
  if (k <= 2 * c - 3) return k % 2 == 0 ? (a - 1) / 2 : (a + 1) / 2;
  return detail::floor_div2(a + 2 * c - k - 2);
}

// ---------------------------------------------------------------------------
// General criterion for [a_1]_q ... [a_k]_q [b]_{q^r}, r >= 2.

/// r | a_i for some i, or b <= 1 + sum floor(a_i / r).
inline bool product_criterion_predicate(const ProductSpec& spec) {
  if (spec.r < 2 || spec.plain_factors.empty()) throw DomainError("predicate requires r >= 2 and k >= 1");
  std::uint64_t floor_sum = 0;
  for (auto a : spec.plain_factors) {
    if (a % spec.r == 0) return true;
    floor_sum += a / spec.r;
  }
  return spec.b <= 1 + floor_sum;
}

enum class FindingKind { consistent, sufficiency_violation, necessity_violation };

inline std::string_view to_string(FindingKind kind) {
  switch (kind) {
    case FindingKind::consistent: return "CONSISTENT";
    case FindingKind::sufficiency_violation: return "SUFFICIENCY_VIOLATION";
    case FindingKind::necessity_violation: return "NECESSITY_VIOLATION";
  }
  return "?";
}

/// One scanned product with its verdicts. Self-contained so a falsifying
/// instance is reproducible from the log alone.
struct LabFinding {
  FindingKind kind = FindingKind::consistent;
  ProductSpec spec;
  bool unimodal = false;
  bool symmetric = false;
  bool predicate = false;

  /// Necessity is only claimed for k <= 3 or r <= 3.
  bool in_necessity_regime() const { return spec.plain_factors.size() <= 3 || spec.r <= 3; }
};

inline nlohmann::json to_json(const LabFinding& f) {
  return nlohmann::json{{"kind", std::string(to_string(f.kind))},
                        {"a", f.spec.plain_factors},
                        {"b", f.spec.b},
                        {"r", f.spec.r},
                        {"unimodal", f.unimodal},
                        {"predicate", f.predicate}};
}

struct ScanBounds {
  std::size_t k_max = 1;
  std::uint64_t r_max = 2;
  std::uint64_t value_max = 1;
};

struct ScanReport {
  std::vector<LabFinding> findings;  // violations only, in scan order
  std::uint64_t scanned = 0;
  std::uint64_t sufficiency_violations = 0;
  std::uint64_t necessity_violations = 0;
  std::uint64_t necessity_violations_in_regime = 0;
  std::uint64_t asymmetric = 0;
};

/// Every spec with 1 <= k <= k_max sorted plain factors, b and the factors in
/// [1, value_max], and 2 <= r <= r_max, in a fixed deterministic order.
inline std::vector<ProductSpec> scan_space(const ScanBounds& bounds) {
  std::vector<ProductSpec> out;
  std::vector<std::uint64_t> factors;
  auto emit = [&] {
    for (std::uint64_t r = 2; r <= bounds.r_max; ++r) {
      for (std::uint64_t b = 1; b <= bounds.value_max; ++b) out.emplace_back(factors, b, r);
    }
  };
  auto extend = [&](auto&& self, std::uint64_t from) -> void {
    if (!factors.empty()) emit();
    if (factors.size() == bounds.k_max) return;
    for (std::uint64_t a = from; a <= bounds.value_max; ++a) {
      factors.push_back(a);
      self(self, a);
      factors.pop_back();
    }
  };
  extend(extend, 1);
  return out;
}

inline LabFinding evaluate(const ProductSpec& spec) {
  LabFinding f;
  f.spec = spec;
  const auto p = spec.expand();
  f.unimodal = is_unimodal(p).unimodal;
  f.symmetric = is_symmetric(p);
  f.predicate = product_criterion_predicate(spec);
  if (f.predicate && !f.unimodal) {
    f.kind = FindingKind::sufficiency_violation;
  } else if (!f.predicate && f.unimodal) {
    f.kind = FindingKind::necessity_violation;
  }
  return f;
}

/// Evaluates the whole scan space on `jobs` workers; findings come back in
/// scan order whatever the parallelism.
inline ScanReport product_criterion_scan(const ScanBounds& bounds, unsigned jobs = 1) {
  const auto space = scan_space(bounds);
  std::vector<LabFinding> results(space.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < space.size(); i = next++) results[i] = evaluate(space[i]);
  };
  jobs = std::max(1u, jobs);
  std::vector<std::jthread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  pool.clear();

  ScanReport report;
  report.scanned = results.size();
  for (auto& f : results) {
    if (!f.symmetric) ++report.asymmetric;
    if (f.kind == FindingKind::consistent) continue;
    if (f.kind == FindingKind::sufficiency_violation) ++report.sufficiency_violations;
    if (f.kind == FindingKind::necessity_violation) {
      ++report.necessity_violations;
      if (f.in_necessity_regime()) ++report.necessity_violations_in_regime;
    }
    report.findings.push_back(std::move(f));
  }
  return report;
}

}  // namespace fibwork
