// fibwork: compute, verify, sweep, cache and render q-Fibonomial data.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "fibwork/commands.hpp"

namespace {

using namespace fibwork;

void add_common(CLI::App* cmd, CommonOptions& opts, std::string& budget, std::string& format) {
  cmd->add_option("--jobs", opts.jobs, "worker threads")->check(CLI::Range(1u, 1024u));
  cmd->add_option("--cache-dir", opts.cache_dir, "result cache directory (default: $FIBWORK_CACHE)");
  cmd->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--budget", budget, "default or extended")->check(CLI::IsMember({"default", "extended"}));
  cmd->add_option("-o,--output", opts.output, "output file, '-' for stdout");
}

void finish_common(CommonOptions& opts, const std::string& budget, const std::string& format) {
  opts.budget = budget == "extended" ? Budget::extended : Budget::standard;
  opts.format = format == "csv" ? OutputFormat::csv : OutputFormat::json;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact q-Fibonomial workbench"};
  app.require_subcommand(1);

  std::string budget = "default";
  std::string format = "json";

  FibonomialOptions fib_opts;
  auto* fib_cmd = app.add_subcommand("fibonomial", "compute one q-Fibonomial coefficient");
  fib_cmd->add_option("m", fib_opts.m)->required();
  fib_cmd->add_option("n", fib_opts.n)->required();
  add_common(fib_cmd, fib_opts.common, budget, format);

  VerifyOptions verify_opts;
  auto* verify_cmd = app.add_subcommand("verify-conjecture", "symmetry and unimodality sweep");
  verify_cmd->add_option("--max-sum", verify_opts.max_sum, "largest m+n");
  verify_cmd->add_option("--square-max", verify_opts.square_max, "largest m for m = n");
  add_common(verify_cmd, verify_opts.common, budget, format);

  OracleOptions oracle_opts;
  auto* oracle_cmd = app.add_subcommand("oracle-check", "tiling enumeration against polynomial division");
  oracle_cmd->add_option("--max-sum", oracle_opts.max_sum, "largest m+n");
  add_common(oracle_cmd, oracle_opts.common, budget, format);

  RenderOptions render_opts;
  auto* render_cmd = app.add_subcommand("render", "SVG of a tiling or of the n = 2 chains");
  render_cmd->add_option("m", render_opts.m)->required();
  render_cmd->add_option("n", render_opts.n)->required();
  render_cmd->add_option("selector", render_opts.selector,
                         "first | last | index=K | degree=D | chains | tiling text (h=...;rR=...;cC=...)");
  add_common(render_cmd, render_opts.common, budget, format);

  FiboCatalanOptions catalan_opts;
  auto* catalan_cmd = app.add_subcommand("fibocatalan-sweep", "q-FiboCatalan divisibility and positivity");
  catalan_cmd->add_option("--max-sum", catalan_opts.max_sum, "largest m+n");
  add_common(catalan_cmd, catalan_opts.common, budget, format);

  LabScanOptions lab_opts;
  auto* lab_cmd = app.add_subcommand("lab-scan", "scan products of q-analogs against the unimodality criterion");
  lab_cmd->add_option("--k-max", lab_opts.bounds.k_max, "most plain factors");
  lab_cmd->add_option("--r-max", lab_opts.bounds.r_max, "largest r");
  lab_cmd->add_option("--value-max", lab_opts.bounds.value_max, "largest a_i and b");
  add_common(lab_cmd, lab_opts.common, budget, format);

  ChainsOptions chains_opts;
  auto* chains_cmd = app.add_subcommand("chains", "chain decomposition of T(m,2)");
  chains_cmd->add_option("m", chains_opts.m)->required();
  chains_cmd->add_option("--svg", chains_opts.svg_path, "also write the chain gallery as SVG");
  add_common(chains_cmd, chains_opts.common, budget, format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitRefused;
  }

  try {
    if (*fib_cmd) {
      finish_common(fib_opts.common, budget, format);
      return cmd_fibonomial(fib_opts, std::cout, std::cerr);
    }
    if (*verify_cmd) {
      finish_common(verify_opts.common, budget, format);
      return cmd_verify_conjecture(verify_opts, std::cout, std::cerr);
    }
    if (*oracle_cmd) {
      finish_common(oracle_opts.common, budget, format);
      return cmd_oracle_check(oracle_opts, std::cout, std::cerr);
    }
    if (*render_cmd) {
      finish_common(render_opts.common, budget, format);
      return cmd_render(render_opts, std::cout, std::cerr);
    }
    if (*catalan_cmd) {
      finish_common(catalan_opts.common, budget, format);
      return cmd_fibocatalan_sweep(catalan_opts, std::cout, std::cerr);
    }
    if (*lab_cmd) {
      finish_common(lab_opts.common, budget, format);
      return cmd_lab_scan(lab_opts, std::cout, std::cerr);
    }
    if (*chains_cmd) {
      finish_common(chains_opts.common, budget, format);
      return cmd_chains(chains_opts, std::cout, std::cerr);
    }
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRefused;
  }
  return kExitRefused;
}
