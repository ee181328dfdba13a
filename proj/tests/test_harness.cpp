#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "fibwork/commands.hpp"

using namespace fibwork;
namespace fs = std::filesystem;

namespace {

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = fs::temp_directory_path() / ("fibwork-test-" + hex64((std::uint64_t{rd()} << 32) | rd()));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST(Checksum, StableAndSensitive) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(coefficient_checksum(qfibonomial(3, 3)), coefficient_checksum(qfibonomial(3, 3)));
  EXPECT_NE(coefficient_checksum(qfibonomial(3, 3)), coefficient_checksum(qfibonomial(3, 4)));
}

TEST(SweepRecord, JsonRoundTripAndCsv) {
  auto rec = make_record(3, 3, qfibonomial(3, 3), 1.5);
  rec.swap_equal = true;
  EXPECT_EQ(rec.degree, 12);
  EXPECT_EQ(rec.peak_coeff, "8");
  EXPECT_TRUE(rec.symmetric);
  EXPECT_TRUE(rec.unimodal);
  EXPECT_FALSE(rec.log_concave);
  const auto back = record_from_json(Json::parse(to_json(rec).dump()));
  EXPECT_EQ(to_json(back), to_json(rec));
  EXPECT_EQ(to_csv_row(rec), "3,3,12,8,true,true,false,1.500");
  EXPECT_EQ(kSweepCsvHeader, "m,n,degree,peak_coeff,symmetric,unimodal,log_concave,ms");
}

TEST(Cache, RoundTripOnRandomKeys) {
  TempDir dir;
  ResultCache cache(dir.path());
  std::mt19937_64 rng(29);
  for (int i = 0; i < 50; ++i) {
    const std::size_t m = rng() % 9, n = rng() % 9;
    const auto key = ResultCache::key("qfibonomial", m, n);
    const auto computed = compute_qfibonomial(m, n);
    const auto first = cache.get_or_compute(key, [&] { return computed; });
    EXPECT_EQ(first, computed);
    const auto loaded = cache.load(key);
    ASSERT_TRUE(loaded.has_value());
    EXPECT_EQ(*loaded, computed);
    EXPECT_EQ(to_json(*loaded).dump(), to_json(computed).dump());
    bool recomputed = false;
    const auto second = cache.get_or_compute(key, [&] {
      recomputed = true;
      return computed;
    });
    EXPECT_FALSE(recomputed);
    EXPECT_EQ(second, computed);
  }
}

TEST(Cache, EntryLayout) {
  TempDir dir;
  ResultCache cache(dir.path());
  const auto key = ResultCache::key("qfibonomial", 2, 2);
  EXPECT_EQ(key, "qfibonomial(m=2,n=2)");
  cache.store(key, qfibonomial(2, 2));
  std::ifstream in(cache.path_for(key));
  const auto doc = Json::parse(in);
  EXPECT_EQ(doc.at("key"), key);
  EXPECT_EQ(doc.at("coeffs"), Json::parse(R"(["1","2","2","1"])"));
  EXPECT_TRUE(doc.contains("created"));
  EXPECT_FALSE(cache.load(ResultCache::key("qfibonomial", 2, 3)).has_value());
}

TEST(Cache, CorruptEntryIsIoError) {
  TempDir dir;
  ResultCache cache(dir.path());
  const auto key = ResultCache::key("qfibonomial", 1, 2);
  std::ofstream(cache.path_for(key)) << "{not json";
  EXPECT_THROW(cache.load(key), IoError);
}

TEST(Cache, DirectoryResolution) {
  ::setenv("FIBWORK_CACHE", "/tmp/from-env", 1);
  EXPECT_EQ(resolve_cache_dir("/tmp/from-flag"), fs::path("/tmp/from-flag"));
  EXPECT_EQ(resolve_cache_dir(""), fs::path("/tmp/from-env"));
  ::unsetenv("FIBWORK_CACHE");
  EXPECT_FALSE(resolve_cache_dir("").has_value());
}

TEST(ParallelMap, OrderedAndExceptionSafe) {
  const auto squares = parallel_map(1000, 8, [](std::size_t i) { return i * i; });
  for (std::size_t i = 0; i < squares.size(); ++i) ASSERT_EQ(squares[i], i * i);
  EXPECT_TRUE(parallel_map(0, 4, [](std::size_t i) { return i; }).empty());
  EXPECT_THROW(parallel_map(100, 4,
                            [](std::size_t i) {
                              if (i == 37) throw std::runtime_error("boom");
                              return i;
                            }),
               std::runtime_error);
}

TEST(Verification, PairsAndParallelEquality) {
  const auto pairs = verification_pairs(4, 3);
  std::vector<std::pair<std::size_t, std::size_t>> got;
  for (auto p : pairs) got.emplace_back(p.m, p.n);
  const std::vector<std::pair<std::size_t, std::size_t>> want{{1, 1}, {1, 2}, {2, 1}, {1, 3},
                                                              {2, 2}, {3, 1}, {3, 3}};
  EXPECT_EQ(got, want);

  const auto serial = run_verification(10, 6, 1, Budget::standard, std::nullopt);
  const auto parallel = run_verification(10, 6, 6, Budget::standard, std::nullopt);
  ASSERT_EQ(serial.records.size(), parallel.records.size());
  for (std::size_t i = 0; i < serial.records.size(); ++i) {
    auto a = to_json(serial.records[i]);
    auto b = to_json(parallel.records[i]);
    a.erase("ms");
    b.erase("ms");
    EXPECT_EQ(a, b);
    EXPECT_TRUE(serial.records[i].unimodal);
  }
  EXPECT_EQ(serial.failures, 0u);
}

TEST(Commands, FibonomialWritesJson) {
  TempDir dir;
  FibonomialOptions opts;
  opts.m = 2;
  opts.n = 2;
  opts.common.output = (dir.path() / "f.json").string();
  std::ostringstream out, err;
  EXPECT_EQ(cmd_fibonomial(opts, out, err), kExitOk);
  std::ifstream in(opts.common.output);
  const auto doc = Json::parse(in);
  EXPECT_EQ(doc.at("coeffs"), Json::parse(R"(["1","2","2","1"])"));
  EXPECT_EQ(record_from_json(doc.at("record")).degree, 3);

  opts.m = 0;
  opts.n = 5;
  opts.common.output = "-";
  out.str("");
  EXPECT_EQ(cmd_fibonomial(opts, out, err), kExitOk);
  EXPECT_EQ(Json::parse(out.str()).at("coeffs"), Json::parse(R"(["1"])"));

  opts.m = 3;
  opts.n = 3;
  out.str("");
  EXPECT_EQ(cmd_fibonomial(opts, out, err), kExitOk);
  const auto doc33 = Json::parse(out.str());
  EXPECT_EQ(doc33.at("coeffs").size(), 13u);
  EXPECT_TRUE(doc33.at("record").at("unimodal").get<bool>());
  EXPECT_FALSE(doc33.at("record").at("log_concave").get<bool>());
}

TEST(Commands, FibonomialRefusalAndIoError) {
  FibonomialOptions opts;
  opts.m = 30;
  opts.n = 30;
  std::ostringstream out, err;
  EXPECT_EQ(cmd_fibonomial(opts, out, err), kExitRefused);
  EXPECT_NE(err.str().find("projected degree"), std::string::npos);
  opts.m = 2;
  opts.n = 2;
  opts.common.output = "/nonexistent-dir/x.json";
  EXPECT_EQ(cmd_fibonomial(opts, out, err), kExitIo);
}

TEST(Commands, FibonomialUsesCache) {
  TempDir dir;
  FibonomialOptions opts;
  opts.m = 4;
  opts.n = 3;
  opts.common.cache_dir = dir.path().string();
  std::ostringstream out, err;
  EXPECT_EQ(cmd_fibonomial(opts, out, err), kExitOk);
  ResultCache cache(dir.path());
  const auto hit = cache.load(ResultCache::key("qfibonomial", 4, 3));
  ASSERT_TRUE(hit.has_value());
  EXPECT_EQ(*hit, qfibonomial(4, 3));
}

TEST(Commands, VerifyConjecture) {
  VerifyOptions opts;
  opts.max_sum = 10;
  opts.square_max = 2;
  opts.common.format = OutputFormat::csv;
  opts.common.jobs = 3;
  std::ostringstream out, err;
  EXPECT_EQ(cmd_verify_conjecture(opts, out, err), kExitOk);
  const auto rows = lines(out.str());
  ASSERT_FALSE(rows.empty());
  EXPECT_EQ(rows.front(), kSweepCsvHeader);
  EXPECT_EQ(rows.size(), 1u + 45u);  // m, n >= 1 with m + n <= 10
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_NE(rows[i].find(",true,true,"), std::string::npos) << rows[i];

  opts.max_sum = 2;
  opts.common.format = OutputFormat::json;
  out.str("");
  EXPECT_EQ(cmd_verify_conjecture(opts, out, err), kExitOk);
  const auto records = lines(out.str());
  ASSERT_EQ(records.size(), 2u);
  for (const auto& line : records) {
    const auto r = record_from_json(Json::parse(line));
    EXPECT_TRUE(r.unimodal);
    EXPECT_TRUE(r.swap_equal.value_or(false));
  }
}

TEST(Commands, OracleCheck) {
  OracleOptions opts;
  std::ostringstream out, err;
  opts.max_sum = 6;
  EXPECT_EQ(cmd_oracle_check(opts, out, err), kExitOk);
  opts.max_sum = 8;
  EXPECT_EQ(cmd_oracle_check(opts, out, err), kExitOk);
  opts.max_sum = 40;
  err.str("");
  EXPECT_EQ(cmd_oracle_check(opts, out, err), kExitRefused);
  EXPECT_NE(err.str().find("tilings, cap is"), std::string::npos);
}

TEST(Commands, Render) {
  RenderOptions opts;
  std::ostringstream out, err;
  opts.m = 4;
  opts.n = 4;
  opts.selector = "h=0,0,3,4;r1=2;c4=2";
  EXPECT_EQ(cmd_render(opts, out, err), kExitOk);
  EXPECT_NE(out.str().find("degree 25"), std::string::npos);

  opts.m = 3;
  opts.n = 2;
  opts.selector = "chains";
  out.str("");
  EXPECT_EQ(cmd_render(opts, out, err), kExitOk);
  EXPECT_NE(out.str().find("block 3:"), std::string::npos);
  EXPECT_EQ(out.str().find("block 4:"), std::string::npos);

  opts.m = 2;
  opts.n = 0;
  opts.selector = "first";
  out.str("");
  EXPECT_EQ(cmd_render(opts, out, err), kExitOk);
  EXPECT_NE(out.str().find("degree 0"), std::string::npos);

  opts.m = 3;
  opts.n = 3;
  opts.selector = "degree=12";
  out.str("");
  EXPECT_EQ(cmd_render(opts, out, err), kExitOk);
  EXPECT_NE(out.str().find("degree 12"), std::string::npos);

  for (const char* bad : {"bogus", "index=999", "degree=13", "h=0,1,3"}) {
    opts.selector = bad;
    EXPECT_EQ(cmd_render(opts, out, err), kExitRefused) << bad;
  }
  opts.selector = "chains";
  EXPECT_EQ(cmd_render(opts, out, err), kExitRefused);
}

TEST(Commands, FiboCatalanSweep) {
  const auto row = fibocatalan_row(2, 3);
  EXPECT_TRUE(row.divisible);
  EXPECT_EQ(coeffs_to_json(*row.quotient), Json::parse(R"(["1","1","1"])"));
  EXPECT_TRUE(row.nonnegative.value_or(false));
  EXPECT_EQ(coeffs_to_json(*fibocatalan_row(1, 1).quotient), Json::parse(R"(["1"])"));
  const auto gcd3 = fibocatalan_row(3, 3);
  EXPECT_FALSE(gcd3.integral_class);
  EXPECT_FALSE(gcd3.violates_expectation());
  EXPECT_FALSE(gcd3.telescoping_agrees.has_value());

  FiboCatalanOptions opts;
  opts.max_sum = 8;
  opts.common.format = OutputFormat::csv;
  std::ostringstream out, err;
  EXPECT_EQ(cmd_fibocatalan_sweep(opts, out, err), kExitOk);
  const auto rows = lines(out.str());
  EXPECT_EQ(rows.front(), kFiboCatalanCsvHeader);
  EXPECT_EQ(rows.size(), 1u + 28u);
}

TEST(Commands, LabScan) {
  LabScanOptions opts;
  opts.bounds = {4, 4, 3};
  opts.common.jobs = 2;
  std::ostringstream out, err;
  EXPECT_EQ(cmd_lab_scan(opts, out, err), kExitOk);
  const auto rows = lines(out.str());
  ASSERT_FALSE(rows.empty());
  const auto summary = Json::parse(rows.back());
  EXPECT_EQ(summary.at("kind"), "SUMMARY");
  EXPECT_EQ(summary.at("sufficiency_violations"), 0);
  bool found = false;
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    const auto j = Json::parse(rows[i]);
    if (j.at("a") == Json::parse("[3,3,3,3]") && j.at("b") == 2 && j.at("r") == 4) found = true;
  }
  EXPECT_TRUE(found);
  opts.bounds = {1, 1, 3};
  EXPECT_EQ(cmd_lab_scan(opts, out, err), kExitRefused);
}

TEST(Commands, Chains) {
  TempDir dir;
  ChainsOptions opts;
  opts.m = 3;
  opts.svg_path = (dir.path() / "chains.svg").string();
  std::ostringstream out, err;
  EXPECT_EQ(cmd_chains(opts, out, err), kExitOk);
  const auto rows = lines(out.str());
  ASSERT_EQ(rows.size(), 3u);
  std::size_t total = 0;
  for (const auto& line : rows) total += Json::parse(line).at("size").get<std::size_t>();
  EXPECT_EQ(total, 15u);
  EXPECT_TRUE(fs::exists(opts.svg_path));
  opts.m = 0;
  EXPECT_EQ(cmd_chains(opts, out, err), kExitRefused);
}
