#pragma once

// Sweep plumbing shared by the command-line front end: per-pair records,
// a content-addressed result cache, and an ordered worker pool.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <type_traits>
#include <vector>

#include <json.hpp>

#include "fibwork/json_io.hpp"
#include "fibwork/qpoly.hpp"

namespace fibwork {

enum ExitCode : int {
  kExitOk = 0,
  kExitFinding = 1,  // a result contradicts a theorem or verified claim
  kExitRefused = 2,  // resource cap or unusable request
  kExitIo = 3,
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 64-bit FNV-1a, stable across platforms and runs.
inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    hash ^= ch;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

inline std::string hex64(std::uint64_t value) {
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << value;
  return out.str();
}

/// Checksum of the coefficient sequence (decimal strings joined by ',').
inline std::string coefficient_checksum(const Polynomial& p) {
  std::string joined;
  for (const auto& c : p.coefficients()) {
    joined += to_decimal(c);
    joined += ',';
  }
  return hex64(fnv1a64(joined));
}

// ---------------------------------------------------------------------------
// Records

struct SweepRecord {
  std::size_t m = 0;
  std::size_t n = 0;
  std::int64_t degree = -1;
  std::string peak_coeff = "0";
  bool symmetric = false;
  bool unimodal = false;
  bool log_concave = false;
  double ms = 0.0;
  std::string checksum;
  bool over_budget = false;
  /// qfibonomial(m, n) == qfibonomial(n, m); only filled by the sweep.
  std::optional<bool> swap_equal;
};

inline SweepRecord make_record(std::size_t m, std::size_t n, const Polynomial& p, double ms) {
  SweepRecord rec;
  rec.m = m;
  rec.n = n;
  rec.degree = p.degree();
  rec.peak_coeff = to_decimal(peak_coefficient(p));
  rec.ms = ms;
  rec.checksum = coefficient_checksum(p);
  if (!p.is_zero() && p.has_nonnegative_coefficients()) {
    rec.symmetric = is_symmetric(p);
    rec.unimodal = is_unimodal(p).unimodal;
    rec.log_concave = is_log_concave(p);
  }
  return rec;
}

inline Json to_json(const SweepRecord& r) {
  Json j{{"m", r.m},
         {"n", r.n},
         {"degree", r.degree},
         {"peak_coeff", r.peak_coeff},
         {"symmetric", r.symmetric},
         {"unimodal", r.unimodal},
         {"log_concave", r.log_concave},
         {"ms", r.ms},
         {"checksum", r.checksum},
         {"over_budget", r.over_budget}};
  if (r.swap_equal) j["swap_equal"] = *r.swap_equal;
  return j;
}

inline SweepRecord record_from_json(const Json& j) {
  SweepRecord r;
  r.m = j.at("m").get<std::size_t>();
  r.n = j.at("n").get<std::size_t>();
  r.degree = j.at("degree").get<std::int64_t>();
  r.peak_coeff = j.at("peak_coeff").get<std::string>();
  r.symmetric = j.at("symmetric").get<bool>();
  r.unimodal = j.at("unimodal").get<bool>();
  r.log_concave = j.at("log_concave").get<bool>();
  r.ms = j.at("ms").get<double>();
  r.checksum = j.at("checksum").get<std::string>();
  r.over_budget = j.value("over_budget", false);
  if (j.contains("swap_equal")) r.swap_equal = j.at("swap_equal").get<bool>();
  return r;
}

inline constexpr std::string_view kSweepCsvHeader = "m,n,degree,peak_coeff,symmetric,unimodal,log_concave,ms";

inline std::string to_csv_row(const SweepRecord& r) {
  std::ostringstream out;
  out << r.m << ',' << r.n << ',' << r.degree << ',' << r.peak_coeff << ',' << (r.symmetric ? "true" : "false")
      << ',' << (r.unimodal ? "true" : "false") << ',' << (r.log_concave ? "true" : "false") << ','
      << std::fixed << std::setprecision(3) << r.ms;
  return out.str();
}

// ---------------------------------------------------------------------------
// Cache

inline std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

/// Directory of JSON files, one per (operation, parameters) key, named by
/// the key's FNV-1a hash.
class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  static std::string key(std::string_view operation, std::size_t m, std::size_t n) {
    return std::string(operation) + "(m=" + std::to_string(m) + ",n=" + std::to_string(n) + ")";
  }

  const std::filesystem::path& directory() const noexcept { return dir_; }

  std::filesystem::path path_for(std::string_view key) const { return dir_ / (hex64(fnv1a64(key)) + ".json"); }

  std::optional<Polynomial> load(std::string_view key) const {
    const auto path = path_for(key);
    std::error_code ec;
    if (!std::filesystem::exists(path, ec)) return std::nullopt;
    std::ifstream in(path);
    if (!in) throw IoError("cannot read cache entry " + path.string());
    Json doc;
    try {
      in >> doc;
    } catch (const Json::exception& e) {
      throw IoError("corrupt cache entry " + path.string() + ": " + e.what());
    }
    if (doc.value("key", std::string()) != key) return std::nullopt;  // hash collision
    return polynomial_from_json(doc);
  }

  void store(std::string_view key, const Polynomial& p) const {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw IoError("cannot create cache directory " + dir_.string() + ": " + ec.message());
    const auto path = path_for(key);
    auto tmp = path;
    tmp += ".tmp" + hex64(std::hash<std::thread::id>{}(std::this_thread::get_id()));
    {
      std::ofstream out(tmp);
      if (!out) throw IoError("cannot write cache entry " + tmp.string());
      Json doc{{"key", std::string(key)}, {"coeffs", coeffs_to_json(p)}, {"created", utc_timestamp()}};
      out << doc.dump() << '\n';
      if (!out) throw IoError("short write on " + tmp.string());
    }
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("cannot publish cache entry " + path.string() + ": " + ec.message());
  }

  /// Cached value for key, computing and storing it on a miss.
  template <class Compute>
  Polynomial get_or_compute(std::string_view key, Compute&& compute) const {
    if (auto hit = load(key)) return std::move(*hit);
    Polynomial value = compute();
    store(key, value);
    return value;
  }

 private:
  std::filesystem::path dir_;
};

/// --cache-dir wins, then $FIBWORK_CACHE; no cache otherwise.
inline std::optional<std::filesystem::path> resolve_cache_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return std::filesystem::path(flag_value);
  if (const char* env = std::getenv("FIBWORK_CACHE"); env != nullptr && *env != '\0') {
    return std::filesystem::path(env);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Worker pool

/// results[i] = fn(i) for i in [0, count), evaluated on up to `jobs` threads.
/// The result order never depends on scheduling.
template <class Fn>
auto parallel_map(std::size_t count, unsigned jobs, Fn&& fn) {
  using Result = std::invoke_result_t<Fn&, std::size_t>;
  std::vector<std::optional<Result>> slots(count);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (std::size_t i = next++; i < count && !failed; i = next++) {
      try {
        slots[i].emplace(fn(i));
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(1, count))));
  {
    std::vector<std::jthread> pool;
    for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);
  std::vector<Result> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

inline double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace fibwork
