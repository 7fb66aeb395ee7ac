// certilink: certified linking numbers and writhe of polygonal curves.
//
// Exit codes: 0 certified (or oracles agree), 2 uncertified, 1 error.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "certilink/chains.hpp"
#include "certilink/errors.hpp"
#include "certilink/io.hpp"
#include "certilink/linking.hpp"
#include "certilink/oracle.hpp"

namespace {

using namespace certilink;
using nlohmann::json;

constexpr int kExitCertified = 0;
constexpr int kExitError = 1;
constexpr int kExitUncertified = 2;

struct CommonOptions {
  std::string precision = "double";
  bool parallel = false;
  bool as_json = false;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--precision", o.precision, "Working precision")
      ->check(CLI::IsMember({"double", "single"}));
  cmd->add_flag("--parallel", o.parallel, "Evaluate segment pairs on several threads");
  cmd->add_flag("--json", o.as_json, "Print a JSON report");
}

unsigned worker_count(bool parallel) {
  if (!parallel) return 1;
  if (const char* env = std::getenv("CERTILINK_THREADS")) {
    try {
      const long n = std::stol(env);
      if (n > 0) return static_cast<unsigned>(n);
    } catch (const std::exception&) {
    }
    throw Error(ErrorKind::invalid_input, "CERTILINK_THREADS must be a positive integer");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

LinkOptions link_options(const CommonOptions& o) {
  LinkOptions opts;
  opts.precision = o.precision == "single" ? Precision::single_precision : Precision::double_precision;
  opts.threads = worker_count(o.parallel);
  return opts;
}

std::string format_bound(double bound_u) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", bound_u);
  return buf;
}

template <typename F>
double timed_ms(F&& f) {
  const auto start = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

std::string pick(const std::string& chosen, const io::CurveSet& set, std::size_t fallback) {
  if (!chosen.empty()) return chosen;
  if (set.size() <= fallback) throw Error(ErrorKind::invalid_input, "file has too few curves");
  return set[fallback].name;
}

int report_link(const LinkingResult& r, double elapsed_ms, bool as_json) {
  if (as_json) {
    std::cout << json{{"linking_number", r.value},
                      {"error_bound_u", r.err_bound_u},
                      {"certified", r.certified},
                      {"pairs", r.pairs},
                      {"elapsed_ms", elapsed_ms}}
                     .dump()
              << '\n';
  } else {
    std::cout << "L = " << r.value << " (" << (r.certified ? "certified" : "UNCERTIFIED")
              << ", bound " << format_bound(r.err_bound_u) << " u)\n";
  }
  return r.certified ? kExitCertified : kExitUncertified;
}

// ---------------------------------------------------------------------------

struct LinkArgs {
  std::string file, a, b;
  CommonOptions common;
};

int run_link(const LinkArgs& args) {
  const auto set = io::read_curve_file(args.file);
  const auto& p = io::find_curve(set, pick(args.a, set, 0));
  const auto& q = io::find_curve(set, pick(args.b, set, 1));
  LinkingResult r;
  const double ms = timed_ms([&] { r = linking_number(p, q, link_options(args.common)); });
  return report_link(r, ms, args.common.as_json);
}

struct WritheArgs {
  std::string file, curve;
  CommonOptions common;
};

int run_writhe(const WritheArgs& args) {
  const auto set = io::read_curve_file(args.file);
  const auto& p = io::find_curve(set, pick(args.curve, set, 0));
  WritheResult r;
  const double ms = timed_ms([&] { r = writhe(p, link_options(args.common)); });
  if (args.common.as_json) {
    std::cout << json{{"writhe", r.value},
                      {"error_bound_u", r.err_bound_u},
                      {"certified", r.certified},
                      {"pairs", r.pairs},
                      {"elapsed_ms", ms}}
                     .dump()
              << '\n';
  } else {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", r.value);
    std::cout << "W = " << buf << " +/- " << format_bound(r.err_bound_u) << " u ("
              << (r.certified ? "certified" : "UNCERTIFIED") << ")\n";
  }
  return r.certified ? kExitCertified : kExitUncertified;
}

int run_chain_link(const LinkArgs& args) {
  const auto set = io::read_chain_file(args.file);
  auto name = [&](const std::string& chosen, std::size_t fallback) {
    if (!chosen.empty()) return chosen;
    if (set.chains.size() <= fallback) throw Error(ErrorKind::invalid_input, "file has too few chains");
    return set.chains[fallback].name;
  };
  const auto& a = io::find_chain(set, name(args.a, 0));
  const auto& b = io::find_chain(set, name(args.b, 1));
  LinkingResult r;
  const double ms = timed_ms([&] { r = chain_linking(a, b, link_options(args.common)); });
  return report_link(r, ms, args.common.as_json);
}

struct GenArgs {
  std::string family, output;
  int k = 3;
  std::uint64_t seed = 1;
  std::size_t segments = 64;
};

int run_gen(const GenArgs& args) {
  io::CurveSet set;
  if (args.family == "hopf") set = io::hopf_link(args.segments);
  else if (args.family == "unlink") set = io::unlink(args.segments);
  else if (args.family == "torus") set = io::torus_link(args.k, args.segments);
  else if (args.family == "trefoil") set = io::trefoil(args.segments);
  else set = io::random_link(args.seed, args.segments);
  const std::string text = io::write_curves(set);
  if (args.output.empty() || args.output == "-") {
    std::cout << text;
  } else {
    std::ofstream out(args.output, std::ios::binary);
    if (!out) throw Error(ErrorKind::invalid_input, "cannot write " + args.output);
    out << text;
  }
  return 0;
}

int run_verify(const LinkArgs& args) {
  const auto set = io::read_curve_file(args.file);
  const auto& p = io::find_curve(set, pick(args.a, set, 0));
  const auto& q = io::find_curve(set, pick(args.b, set, 1));
  const LinkingResult r = linking_number(p, q, link_options(args.common));
  const std::int64_t projected = oracle::linking_by_projection(p, q);
  const double quadrature = oracle::to_double(oracle::linking_by_quadrature(p, q));
  const bool agree = r.value == projected && std::llround(quadrature) == projected;
  const char* verdict = !r.certified ? "UNCERTIFIED" : agree ? "AGREE" : "DISAGREE";

  if (args.common.as_json) {
    std::cout << json{{"linking_number", r.value},   {"error_bound_u", r.err_bound_u},
                      {"certified", r.certified},    {"projection", projected},
                      {"quadrature", quadrature},    {"values_agree", agree},
                      {"verdict", verdict}}
                     .dump()
              << '\n';
  } else {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12f", quadrature);
    std::cout << "certified:  L = " << r.value << " (bound " << format_bound(r.err_bound_u) << " u)\n"
              << "projection: L = " << projected << '\n'
              << "quadrature: L = " << buf << '\n'
              << verdict << (!r.certified ? (agree ? " (values agree)" : " (values differ)") : "") << '\n';
  }
  if (!r.certified) return kExitUncertified;
  return agree ? kExitCertified : kExitError;
}

struct BenchArgs {
  io::BenchConfig config;
  std::string csv;
  CommonOptions common;
};

int run_bench(BenchArgs args) {
  args.config.options = link_options(args.common);
  const auto rows = io::run_bench(args.config);
  if (args.csv.empty() || args.csv == "-") {
    io::write_bench_csv(std::cout, rows);
  } else {
    std::ofstream out(args.csv);
    if (!out) throw Error(ErrorKind::invalid_input, "cannot write " + args.csv);
    io::write_bench_csv(out, rows);
    for (const auto& row : rows) {
      std::cerr << "n=" << row.n << " L=" << row.value << " bound=" << format_bound(row.bound_u)
                << "u " << (row.certified ? "certified" : "UNCERTIFIED") << ' ' << row.elapsed_ms
                << " ms\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified linking number and writhe of closed polygonal curves"};
  app.require_subcommand(1);

  LinkArgs link_args;
  auto* link = app.add_subcommand("link", "Linking number of two curves");
  link->add_option("file", link_args.file, "Curve file (JSON)")->required()->check(CLI::ExistingFile);
  link->add_option("--a", link_args.a, "First curve (default: first in file)");
  link->add_option("--b", link_args.b, "Second curve (default: second in file)");
  add_common(link, link_args.common);

  WritheArgs writhe_args;
  auto* wr = app.add_subcommand("writhe", "Writhe of one curve");
  wr->add_option("file", writhe_args.file, "Curve file (JSON)")->required()->check(CLI::ExistingFile);
  wr->add_option("--curve", writhe_args.curve, "Curve (default: first in file)");
  add_common(wr, writhe_args.common);

  LinkArgs chain_args;
  auto* chain = app.add_subcommand("chain-link", "Linking number of two weighted chains");
  chain->add_option("file", chain_args.file, "Chain file (JSON)")->required()->check(CLI::ExistingFile);
  chain->add_option("--a", chain_args.a, "First chain (default: first in file)");
  chain->add_option("--b", chain_args.b, "Second chain (default: second in file)");
  add_common(chain, chain_args.common);

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "Write a generated curve file");
  gen->add_option("family", gen_args.family, "Curve family")
      ->required()
      ->check(CLI::IsMember({"hopf", "unlink", "torus", "trefoil", "random"}));
  gen->add_option("--k", gen_args.k, "Torus link T(2, 2k) parameter")->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_args.seed, "Random seed");
  gen->add_option("--segments", gen_args.segments, "Segments per curve")->check(CLI::Range(3, 1 << 24));
  gen->add_option("-o,--output", gen_args.output, "Output path (default: stdout)");

  LinkArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Compare the certified result with both oracles");
  verify->add_option("file", verify_args.file, "Curve file (JSON)")->required()->check(CLI::ExistingFile);
  verify->add_option("--a", verify_args.a, "First curve");
  verify->add_option("--b", verify_args.b, "Second curve");
  add_common(verify, verify_args.common);

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "Sweep N = M over powers of two");
  bench->add_option("--family", bench_args.config.family, "Link family")
      ->check(CLI::IsMember({"hopf", "torus"}));
  bench->add_option("--k", bench_args.config.torus_k, "Torus link parameter")->check(CLI::PositiveNumber);
  bench->add_option("--min-n", bench_args.config.min_n, "Smallest N")->check(CLI::Range(3, 1 << 24));
  bench->add_option("--max-n", bench_args.config.max_n, "Largest N")->check(CLI::Range(3, 1 << 24));
  bench->add_option("--csv", bench_args.csv, "CSV output path (default: stdout)");
  add_common(bench, bench_args.common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitError;
  }

  try {
    if (*link) return run_link(link_args);
    if (*wr) return run_writhe(writhe_args);
    if (*chain) return run_chain_link(chain_args);
    if (*gen) return run_gen(gen_args);
    if (*verify) return run_verify(verify_args);
    if (*bench) return run_bench(bench_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
