#pragma once

// The subcommands behind the `fibwork` executable. Each takes its options,
// writes results to `out` and diagnostics to `err`, and returns an ExitCode.
// Keeping them here lets tests drive them without spawning processes.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fibwork/chains2.hpp"
#include "fibwork/fibonomial.hpp"
#include "fibwork/harness.hpp"
#include "fibwork/svg.hpp"
#include "fibwork/tiling.hpp"
#include "fibwork/unimodality_lab.hpp"

namespace fibwork {

enum class OutputFormat { json, csv };
enum class Budget { standard, extended };

/// Caps and default ranges per budget. "standard" targets a laptop run of a
/// few minutes; "extended" reaches the larger published ranges.
struct BudgetLimits {
  std::size_t verify_max_sum;
  std::size_t verify_square_max;
  std::size_t oracle_max_sum;
  std::size_t fibocatalan_max_sum;
  std::uint64_t max_degree;
  std::uint64_t enumeration_cap;
  double pair_budget_ms;
};

inline BudgetLimits limits_for(Budget budget) {
  if (budget == Budget::extended) return {20, 16, 10, 16, 20'000'000, 200'000'000, 3'600'000.0};
  return {14, 8, 8, 12, 200'000, kDefaultEnumerationCap, 60'000.0};
}

struct CommonOptions {
  OutputFormat format = OutputFormat::json;
  Budget budget = Budget::standard;
  std::string cache_dir;  // empty: fall back to $FIBWORK_CACHE
  std::string output = "-";
  unsigned jobs = 1;
};

namespace detail {

/// Opens `path` for writing, or hands back `fallback` for "-".
class OutputSink {
 public:
  OutputSink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (path.empty() || path == "-") return;
    file_.open(path);
    if (!file_) throw IoError("cannot open " + path + " for writing");
    stream_ = &file_;
  }

  std::ostream& stream() { return *stream_; }

  void finish() {
    stream_->flush();
    if (!*stream_) throw IoError("write failed");
  }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

/// Projected degree check shared by the polynomial-producing commands.
inline std::optional<std::string> degree_refusal(std::size_t m, std::size_t n, const BudgetLimits& limits) {
  if (m + n + 2 > 93) return "projected degree exceeds 64 bits (m+n too large)";
  const auto degree = qfibonomial_degree(m, n);
  if (degree > limits.max_degree) {
    return "projected degree " + std::to_string(degree) + " exceeds cap " + std::to_string(limits.max_degree);
  }
  return std::nullopt;
}

/// qfibonomial through the cache (if any). The extended budget uses the
/// linear-step route, which is the only one that scales there.
inline Polynomial fibonomial_via_cache(std::size_t m, std::size_t n, const std::optional<ResultCache>& cache,
                                       Budget budget) {
  auto compute = [&] { return budget == Budget::extended ? qfibonomial_by_peeling(m, n) : qfibonomial(m, n); };
  if (!cache) return compute();
  return cache->get_or_compute(ResultCache::key("qfibonomial", m, n), compute);
}

inline std::optional<ResultCache> open_cache(const CommonOptions& opts) {
  if (auto dir = resolve_cache_dir(opts.cache_dir)) return ResultCache(*dir);
  return std::nullopt;
}

inline const char* yes_no(bool v) { return v ? "true" : "false"; }

}  // namespace detail

// ---------------------------------------------------------------------------
// fibonomial

struct FibonomialOptions {
  CommonOptions common;
  std::size_t m = 0;
  std::size_t n = 0;
};

/// Writes {"m", "n", "coeffs", "record"} to the output; with an output file,
/// also echoes the record to `out` in the requested format.
inline int cmd_fibonomial(const FibonomialOptions& opts, std::ostream& out, std::ostream& err) {
  const auto limits = limits_for(opts.common.budget);
  if (auto refusal = detail::degree_refusal(opts.m, opts.n, limits)) {
    err << "refused: " << *refusal << "\n";
    return kExitRefused;
  }
  try {
    const auto cache = detail::open_cache(opts.common);
    const auto start = std::chrono::steady_clock::now();
    const auto p = detail::fibonomial_via_cache(opts.m, opts.n, cache, opts.common.budget);
    const auto record = make_record(opts.m, opts.n, p, elapsed_ms(start));

    Json doc{{"m", opts.m}, {"n", opts.n}, {"coeffs", coeffs_to_json(p)}, {"record", to_json(record)}};
    detail::OutputSink sink(opts.common.output, out);
    sink.stream() << doc.dump() << "\n";
    sink.finish();
    if (opts.common.output != "-" && !opts.common.output.empty()) {
      if (opts.common.format == OutputFormat::csv) {
        out << kSweepCsvHeader << "\n" << to_csv_row(record) << "\n";
      } else {
        out << to_json(record).dump() << "\n";
      }
    }
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// verify-conjecture

struct VerifyOptions {
  CommonOptions common;
  std::optional<std::size_t> max_sum;
  std::optional<std::size_t> square_max;
};

struct VerifySummary {
  std::vector<SweepRecord> records;
  std::size_t failures = 0;
  std::size_t over_budget = 0;
};

/// Pairs with m, n >= 1 and m + n <= max_sum, plus m = n <= square_max,
/// ordered by (m + n, m).
inline std::vector<FibonomialQuery> verification_pairs(std::size_t max_sum, std::size_t square_max) {
  std::set<std::pair<std::size_t, std::size_t>> ordered;
  for (std::size_t s = 2; s <= max_sum; ++s) {
    for (std::size_t m = 1; m < s; ++m) ordered.emplace(s, m);
  }
  for (std::size_t k = 1; k <= square_max; ++k) ordered.emplace(2 * k, k);
  std::vector<FibonomialQuery> pairs;
  for (auto [s, m] : ordered) pairs.push_back({m, s - m});
  return pairs;
}

/// Symmetry, unimodality and m <-> n invariance of every pair.
inline VerifySummary run_verification(std::size_t max_sum, std::size_t square_max, unsigned jobs, Budget budget,
                                      const std::optional<ResultCache>& cache) {
  const auto limits = limits_for(budget);
  const auto pairs = verification_pairs(max_sum, square_max);
  VerifySummary summary;
  summary.records = parallel_map(pairs.size(), jobs, [&](std::size_t i) {
    const auto [m, n] = pairs[i];
    const auto start = std::chrono::steady_clock::now();
    const auto p = detail::fibonomial_via_cache(m, n, cache, budget);
    const auto swapped = detail::fibonomial_via_cache(n, m, cache, budget);
    auto rec = make_record(m, n, p, elapsed_ms(start));
    rec.swap_equal = (p == swapped);
    rec.over_budget = rec.ms > limits.pair_budget_ms;
    return rec;
  });
  for (const auto& r : summary.records) {
    if (!r.symmetric || !r.unimodal || !r.swap_equal.value_or(false)) ++summary.failures;
    if (r.over_budget) ++summary.over_budget;
  }
  return summary;
}

inline int cmd_verify_conjecture(const VerifyOptions& opts, std::ostream& out, std::ostream& err) {
  const auto limits = limits_for(opts.common.budget);
  const std::size_t max_sum = opts.max_sum.value_or(limits.verify_max_sum);
  const std::size_t square_max = opts.square_max.value_or(limits.verify_square_max);
  for (const auto& [m, n] : verification_pairs(max_sum, square_max)) {
    if (auto refusal = detail::degree_refusal(m, n, limits)) {
      err << "refused at (" << m << "," << n << "): " << *refusal << "\n";
      return kExitRefused;
    }
  }
  try {
    const auto cache = detail::open_cache(opts.common);
    const auto summary = run_verification(max_sum, square_max, opts.common.jobs, opts.common.budget, cache);
    detail::OutputSink sink(opts.common.output, out);
    auto& stream = sink.stream();
    if (opts.common.format == OutputFormat::csv) stream << kSweepCsvHeader << "\n";
    for (const auto& r : summary.records) {
      stream << (opts.common.format == OutputFormat::csv ? to_csv_row(r) : to_json(r).dump()) << "\n";
      if (!r.symmetric || !r.unimodal || !r.swap_equal.value_or(false)) {
        err << "FINDING: qfibonomial(" << r.m << "," << r.n << ") symmetric=" << detail::yes_no(r.symmetric)
            << " unimodal=" << detail::yes_no(r.unimodal)
            << " swap_equal=" << detail::yes_no(r.swap_equal.value_or(false)) << "\n";
      }
    }
    sink.finish();
    err << "verify-conjecture: " << summary.records.size() << " pairs (m+n <= " << max_sum
        << ", m=n <= " << square_max << "), " << summary.failures << " failures, " << summary.over_budget
        << " over budget\n";
    return summary.failures == 0 ? kExitOk : kExitFinding;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return kExitIo;
  }
}

// ---------------------------------------------------------------------------
// oracle-check

struct OracleOptions {
  CommonOptions common;
  std::optional<std::size_t> max_sum;
};

inline std::optional<std::size_t> first_difference(const Polynomial& a, const Polynomial& b) {
  const std::size_t len = std::max(a.size(), b.size());
  for (std::size_t k = 0; k < len; ++k) {
    if (a.coeff(k) != b.coeff(k)) return k;
  }
  return std::nullopt;
}

/// Brute-force tiling sums against the algebraic q-Fibonomial for all
/// m + n <= max_sum, and the n = 2 block reconstruction against the closed
/// form.
inline int cmd_oracle_check(const OracleOptions& opts, std::ostream& out, std::ostream& err) {
  const auto limits = limits_for(opts.common.budget);
  const std::size_t max_sum = opts.max_sum.value_or(limits.oracle_max_sum);
  if (max_sum + 2 > 93) {
    err << "refused: max-sum " << max_sum << " is beyond 64-bit weights\n";
    return kExitRefused;
  }
  for (std::size_t m = 0; m <= max_sum; ++m) {
    const auto projected = tiling_count(static_cast<int>(m), static_cast<int>(max_sum - m));
    if (projected > limits.enumeration_cap) {
      err << "refused: T(" << m << "," << max_sum - m << ") has " << to_decimal(projected)
          << " tilings, cap is " << limits.enumeration_cap << "\n";
      return kExitRefused;
    }
  }
  std::size_t checked = 0;
  for (std::size_t s = 0; s <= max_sum; ++s) {
    for (std::size_t m = 0; m <= s; ++m) {
      const std::size_t n = s - m;
      const auto brute = tiling_polynomial(static_cast<int>(m), static_cast<int>(n), limits.enumeration_cap);
      const auto algebraic = qfibonomial(m, n);
      if (auto k = first_difference(brute, algebraic)) {
        err << "MISMATCH at (" << m << "," << n << "): coefficient of q^" << *k << " is " << to_decimal(brute.coeff(*k))
            << " by tilings, " << to_decimal(algebraic.coeff(*k)) << " by division\n";
        return kExitFinding;
      }
      ++checked;
    }
  }
  std::size_t chains_checked = 0;
  for (std::size_t m = 1; m + 2 <= max_sum; ++m) {
    const auto blocks = decompose(static_cast<int>(m), limits.enumeration_cap);
    const auto from_blocks = block_polynomial(blocks);
    const auto closed = closed_form_n2(m);
    const auto algebraic = qfibonomial(m, 2);
    for (const auto* other : {&closed, &algebraic}) {
      if (auto k = first_difference(from_blocks, *other)) {
        err << "MISMATCH in n=2 blocks at m=" << m << ": coefficient of q^" << *k << " is "
            << to_decimal(from_blocks.coeff(*k)) << " from blocks, " << to_decimal(other->coeff(*k)) << " expected\n";
        return kExitFinding;
      }
    }
    ++chains_checked;
  }
  out << Json{{"max_sum", max_sum}, {"pairs_checked", checked}, {"chain_rows_checked", chains_checked}, {"pass", true}}
             .dump()
      << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// render

struct RenderOptions {
  CommonOptions common;
  int m = 0;
  int n = 0;
  std::string selector = "first";
};

/// Selectors: first | last | index=K | degree=D | chains | a tiling in text
/// form such as "h=0,0,3,4;r1=2;c4=2".
inline int cmd_render(const RenderOptions& opts, std::ostream& out, std::ostream& err) {
  const auto limits = limits_for(opts.common.budget);
  try {
    std::string svg;
    const std::string& sel = opts.selector;
    if (opts.m < 0 || opts.n < 0) {
      err << "invalid board size\n";
      return kExitRefused;
    }
    if (sel == "chains") {
      if (opts.n != 2 || opts.m < 1) {
        err << "invalid selector: chains needs n = 2 and m >= 1\n";
        return kExitRefused;
      }
      svg = render_chains_svg(decompose(opts.m, limits.enumeration_cap), opts.m);
    } else if (sel.rfind("h=", 0) == 0) {
      svg = render_tiling_svg(parse_tiling(opts.m, opts.n, sel));
    } else {
      const auto all = enumerate_tilings(opts.m, opts.n, limits.enumeration_cap);
      std::optional<Tiling> chosen;
      if (sel == "first") {
        chosen = all.front();
      } else if (sel == "last") {
        chosen = all.back();
      } else if (sel.rfind("index=", 0) == 0) {
        const auto index = std::stoull(sel.substr(6));
        if (index < all.size()) chosen = all[index];
      } else if (sel.rfind("degree=", 0) == 0) {
        const auto degree = std::stoull(sel.substr(7));
        auto it = std::find_if(all.begin(), all.end(), [&](const Tiling& t) { return weight_degree(t) == degree; });
        if (it != all.end()) chosen = *it;
      }
      if (!chosen) {
        err << "invalid selector '" << sel << "'\n";
        return kExitRefused;
      }
      svg = render_tiling_svg(*chosen);
    }
    detail::OutputSink sink(opts.common.output, out);
    sink.stream() << svg;
    sink.finish();
    return kExitOk;
  } catch (const EnumerationCapExceeded& e) {
    err << "refused: " << e.what() << "\n";
    return kExitRefused;
  } catch (const std::invalid_argument& e) {
    err << "invalid selector: " << e.what() << "\n";
    return kExitRefused;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return kExitIo;
  }
}

// ---------------------------------------------------------------------------
// fibocatalan-sweep

struct FiboCatalanRow {
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t gcd = 0;
  bool integral_class = false;
  bool divisible = false;
  std::optional<bool> nonnegative;
  bool fibonomial_unimodal = false;
  std::optional<bool> telescoping_agrees;
  std::optional<Polynomial> quotient;

  /// Integrality and telescoping are theorems in the gcd {1, 2} class, and
  /// non-negativity follows there once unimodality is verified.
  bool violates_expectation() const {
    if (!integral_class) return false;
    if (!divisible || !telescoping_agrees.value_or(false)) return true;
    return fibonomial_unimodal && !nonnegative.value_or(false);
  }
};

inline FiboCatalanRow fibocatalan_row(std::size_t m, std::size_t n) {
  FiboCatalanRow row;
  row.m = m;
  row.n = n;
  row.gcd = std::gcd(m, n);
  row.integral_class = fibocatalan_integral_class(m, n);
  row.fibonomial_unimodal = is_unimodal(qfibonomial(m, n)).unimodal;
  auto result = qfibocatalan(m, n);
  row.divisible = result.divisible();
  if (row.divisible) {
    row.nonnegative = result.quotient->has_nonnegative_coefficients();
    if (row.integral_class) row.telescoping_agrees = fibocat_coeffs_via_telescoping(m, n) == *result.quotient;
    row.quotient = std::move(result.quotient);
  }
  return row;
}

inline Json to_json(const FiboCatalanRow& r) {
  Json j{{"m", r.m},
         {"n", r.n},
         {"gcd", r.gcd},
         {"integral_class", r.integral_class},
         {"divisible", r.divisible},
         {"fibonomial_unimodal", r.fibonomial_unimodal}};
  j["nonnegative"] = r.nonnegative ? Json(*r.nonnegative) : Json(nullptr);
  j["telescoping_agrees"] = r.telescoping_agrees ? Json(*r.telescoping_agrees) : Json(nullptr);
  if (r.quotient) j["coeffs"] = coeffs_to_json(*r.quotient);
  return j;
}

inline constexpr std::string_view kFiboCatalanCsvHeader =
    "m,n,gcd,integral_class,divisible,nonnegative,fibonomial_unimodal,telescoping_agrees";

inline std::string to_csv_row(const FiboCatalanRow& r) {
  auto opt = [](const std::optional<bool>& v) -> std::string { return v ? detail::yes_no(*v) : ""; };
  std::ostringstream out;
  out << r.m << ',' << r.n << ',' << r.gcd << ',' << detail::yes_no(r.integral_class) << ','
      << detail::yes_no(r.divisible) << ',' << opt(r.nonnegative) << ',' << detail::yes_no(r.fibonomial_unimodal)
      << ',' << opt(r.telescoping_agrees);
  return out.str();
}

struct FiboCatalanOptions {
  CommonOptions common;
  std::optional<std::size_t> max_sum;
};

inline std::vector<FiboCatalanRow> run_fibocatalan_sweep(std::size_t max_sum, unsigned jobs) {
  std::vector<FibonomialQuery> pairs;
  for (std::size_t s = 2; s <= max_sum; ++s) {
    for (std::size_t m = 1; m < s; ++m) pairs.push_back({m, s - m});
  }
  return parallel_map(pairs.size(), jobs, [&](std::size_t i) { return fibocatalan_row(pairs[i].m, pairs[i].n); });
}

inline int cmd_fibocatalan_sweep(const FiboCatalanOptions& opts, std::ostream& out, std::ostream& err) {
  const auto limits = limits_for(opts.common.budget);
  const std::size_t max_sum = opts.max_sum.value_or(limits.fibocatalan_max_sum);
  for (std::size_t m = 1; m < max_sum; ++m) {
    if (auto refusal = detail::degree_refusal(m, max_sum - m, limits)) {
      err << "refused: " << *refusal << "\n";
      return kExitRefused;
    }
  }
  try {
    const auto rows = run_fibocatalan_sweep(max_sum, opts.common.jobs);
    detail::OutputSink sink(opts.common.output, out);
    auto& stream = sink.stream();
    if (opts.common.format == OutputFormat::csv) stream << kFiboCatalanCsvHeader << "\n";
    std::size_t violations = 0;
    for (const auto& r : rows) {
      stream << (opts.common.format == OutputFormat::csv ? to_csv_row(r) : to_json(r).dump()) << "\n";
      if (r.violates_expectation()) {
        ++violations;
        err << "FINDING: q-FiboCatalan(" << r.m << "," << r.n << ") breaks the gcd-class expectations\n";
      }
    }
    sink.finish();
    err << "fibocatalan-sweep: " << rows.size() << " pairs (m+n <= " << max_sum << "), " << violations
        << " violations\n";
    return violations == 0 ? kExitOk : kExitFinding;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return kExitIo;
  }
}

// ---------------------------------------------------------------------------
// lab-scan

struct LabScanOptions {
  CommonOptions common;
  ScanBounds bounds{4, 4, 8};
};

/// Findings as JSON lines followed by one SUMMARY line. A sufficiency
/// violation, a necessity violation inside k <= 3 or r <= 3, or an
/// asymmetric product is reported with exit code 1.
inline int cmd_lab_scan(const LabScanOptions& opts, std::ostream& out, std::ostream& err) {
  if (opts.bounds.r_max < 2 || opts.bounds.k_max < 1 || opts.bounds.value_max < 1) {
    err << "refused: lab-scan needs k-max >= 1, r-max >= 2, value-max >= 1\n";
    return kExitRefused;
  }
  try {
    const auto report = product_criterion_scan(opts.bounds, opts.common.jobs);
    detail::OutputSink sink(opts.common.output, out);
    auto& stream = sink.stream();
    for (const auto& f : report.findings) stream << to_json(f).dump() << "\n";
    stream << Json{{"kind", "SUMMARY"},
                   {"k_max", opts.bounds.k_max},
                   {"r_max", opts.bounds.r_max},
                   {"value_max", opts.bounds.value_max},
                   {"scanned", report.scanned},
                   {"sufficiency_violations", report.sufficiency_violations},
                   {"necessity_violations", report.necessity_violations},
                   {"necessity_violations_k_or_r_le_3", report.necessity_violations_in_regime},
                   {"asymmetric", report.asymmetric}}
                  .dump()
           << "\n";
    sink.finish();
    err << "lab-scan: " << report.scanned << " products, " << report.sufficiency_violations
        << " sufficiency violations, " << report.necessity_violations << " necessity violations ("
        << report.necessity_violations_in_regime << " with k <= 3 or r <= 3)\n";
    const bool contradiction = report.sufficiency_violations > 0 || report.necessity_violations_in_regime > 0 ||
                               report.asymmetric > 0;
    return contradiction ? kExitFinding : kExitOk;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return kExitIo;
  }
}

// ---------------------------------------------------------------------------
// chains

struct ChainsOptions {
  CommonOptions common;
  int m = 1;
  std::string svg_path;
};

inline int cmd_chains(const ChainsOptions& opts, std::ostream& out, std::ostream& err) {
  const auto limits = limits_for(opts.common.budget);
  if (opts.m < 1) {
    err << "refused: chains needs m >= 1\n";
    return kExitRefused;
  }
  try {
    const auto blocks = decompose(opts.m, limits.enumeration_cap);
    detail::OutputSink sink(opts.common.output, out);
    auto& stream = sink.stream();
    if (opts.common.format == OutputFormat::csv) {
      stream << "block,min_degree,max_degree,size,top_row\n";
      for (std::size_t i = 0; i < blocks.size(); ++i) {
        const auto& b = blocks[i];
        stream << i + 1 << ',' << b.min_degree << ',' << b.max_degree << ',' << b.size() << ",\"";
        for (std::size_t k = 0; k < b.top_row_signature.size(); ++k) stream << (k ? " " : "") << b.top_row_signature[k];
        stream << "\"\n";
      }
    } else {
      for (std::size_t i = 0; i < blocks.size(); ++i) {
        const auto& b = blocks[i];
        Json tilings = Json::array();
        for (const auto& t : b.tilings) tilings.push_back(to_string(t));
        stream << Json{{"block", i + 1},
                       {"min_degree", b.min_degree},
                       {"max_degree", b.max_degree},
                       {"size", b.size()},
                       {"top_row", b.top_row_signature},
                       {"tilings", tilings}}
                      .dump()
               << "\n";
      }
    }
    sink.finish();
    if (!opts.svg_path.empty()) {
      std::ofstream svg(opts.svg_path);
      if (!svg) throw IoError("cannot open " + opts.svg_path);
      svg << render_chains_svg(blocks, opts.m);
      if (!svg) throw IoError("write failed on " + opts.svg_path);
    }
    err << "chains: m=" << opts.m << ", " << blocks.size() << " blocks\n";
    return kExitOk;
  } catch (const EnumerationCapExceeded& e) {
    err << "refused: " << e.what() << "\n";
    return kExitRefused;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return kExitIo;
  }
}

}  // namespace fibwork
