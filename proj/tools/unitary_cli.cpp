// Command-line surface for the unitary divisor function library. Every
// command prints a single JSON document with --format json (numbers at 17
// significant digits, byte-identical across runs); text mode rounds to 7.
// Exit codes: 0 success, 1 certification/verification failure, 2 usage or
// domain error.

#include <cstdint>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "unitary/unitary.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailed = 1;
constexpr int kExitUsage = 2;

struct RunConfig {
  std::uint64_t sieve_limit = unitary::kDefaultSieveLimit;
  double zeta_tol = unitary::kDefaultZetaTol;
  std::string format = "text";
  unsigned threads = 1;  // 0 = auto
};

std::string fmt7(double v) { return unitary::fmt_real(v, 7); }

void emit(const unitary::JsonWriter& w) { std::cout << w.str() << "\n"; }

int run_sigma(const RunConfig& cfg, double t, std::uint64_t n) {
  const unitary::PrimeTable table(cfg.sieve_limit);
  const unitary::FactoredInteger f = unitary::factorize(n, table);
  const double value = unitary::unitary_sigma(t, f);
  const std::uint64_t divisor_count = std::uint64_t{1} << f.distinct_primes();

  if (cfg.format == "json") {
    unitary::JsonWriter w;
    w.begin_object();
    w.key("t").value(t);
    w.key("n").value(n);
    w.key("sigma").value(value);
    w.key("factorization").begin_array();
    for (const auto& pp : f.factors())
      w.begin_array().value(pp.prime).value(static_cast<std::uint64_t>(pp.exponent)).end_array();
    w.end_array();
    w.key("unitary_divisor_count").value(divisor_count);
    w.end_object();
    emit(w);
  } else {
    std::cout << "sigma*_" << fmt7(t) << "(" << n << ") = " << fmt7(value) << "\n";
    std::cout << "factorization: " << f.to_string() << "\n";
    std::cout << "unitary divisors: " << divisor_count << "\n";
  }
  return kExitOk;
}

int run_eta_star(const RunConfig& cfg, double tol) {
  const unitary::PrimeTable table(cfg.sieve_limit);
  const unitary::EtaStarResult res = unitary::find_eta_star(tol, table, cfg.zeta_tol);
  if (cfg.format == "json") {
    unitary::JsonWriter w;
    write_json(w, res);
    emit(w);
  } else {
    std::cout << "eta* = " << unitary::fmt_real(res.value) << "\n";
    std::cout << "bracket: [" << unitary::fmt_real(res.bracket_lo) << ", "
              << unitary::fmt_real(res.bracket_hi) << "] after " << res.iterations
              << " iterations\n";
    std::cout << "equation residual: " << fmt7(res.equation_residual) << "\n";
  }
  return kExitOk;
}

int run_classify(const RunConfig& cfg, double t) {
  const unitary::PrimeTable table(cfg.sieve_limit);
  const unitary::Classification c = unitary::classify_connectivity_detail(t, table, cfg.zeta_tol);
  if (cfg.format == "json") {
    unitary::JsonWriter w;
    w.begin_object();
    w.key("t").value(t);
    w.key("verdict").value(unitary::to_string(c.verdict));
    w.key("rule").value(unitary::to_string(c.rule));
    w.end_object();
    emit(w);
  } else {
    std::cout << "closure of the range of sigma*_" << fmt7(t) << ": "
              << unitary::to_string(c.verdict) << " (rule: " << unitary::to_string(c.rule)
              << ")\n";
  }
  return kExitOk;
}

int run_certify_all(const RunConfig& cfg, double j_margin, double v2_margin, double eta_tol) {
  const unitary::PrimeTable table(cfg.sieve_limit);
  bool all_pass = true;
  std::vector<std::string> failures;

  unitary::JsonWriter w;
  w.begin_object();

  w.key("slope_certificates").begin_array();
  for (int m : unitary::kWitnessSet) {
    const unitary::GridCertificate cert = unitary::certify_slope_positive(m, table, j_margin);
    write_json(w, cert);
    if (!cert.verdict) {
      all_pass = false;
      failures.push_back("slope certificate m=" + std::to_string(m));
    }
  }
  w.end_array();

  const unitary::GridCertificate margin_cert =
      unitary::certify_margin_positive_on_2_3(table, v2_margin, cfg.zeta_tol);
  w.key("gap_margin_certificate");
  write_json(w, margin_cert);
  if (!margin_cert.verdict) {
    all_pass = false;
    failures.push_back("gap margin certificate on [2,3]");
  }

  const auto exceptions = unitary::ratio_exceptions(table, 3099);
  const std::set<std::size_t> expected{1, 2, 3, 4, 6, 9};
  const bool exceptions_ok = exceptions == expected;
  w.key("prime_ratio_search").begin_object();
  w.key("max_j").value(3099);
  w.key("exceptions").begin_array();
  for (std::size_t j : exceptions) w.value(j);
  w.end_array();
  w.key("pass").value(exceptions_ok);
  w.end_object();
  if (!exceptions_ok) {
    all_pass = false;
    failures.push_back("prime ratio exception search");
  }

  w.key("tail_inequality_checks").begin_array();
  bool tail_ok = true;
  for (double r : {3.01, 3.5, 4.0, 5.0, 10.0, 50.0}) {
    const bool pass = unitary::check_r_gt_3(r, table);
    w.begin_object();
    w.key("r").value(r);
    w.key("pass").value(pass);
    w.end_object();
    tail_ok = tail_ok && pass;
  }
  w.end_array();
  if (!tail_ok) {
    all_pass = false;
    failures.push_back("tail inequality checks for r > 3");
  }

  const unitary::EtaStarResult eta = unitary::find_eta_star(eta_tol, table, cfg.zeta_tol);
  w.key("eta_star");
  write_json(w, eta);
  const bool eta_ok = eta.equation_residual < 1e-8;
  if (!eta_ok) {
    all_pass = false;
    failures.push_back("eta* equation residual");
  }

  w.key("all_pass").value(all_pass);
  w.end_object();

  if (cfg.format == "json") {
    emit(w);
  } else {
    std::cout << "slope certificates (2801-point grid on [1,2], margin " << fmt7(j_margin)
              << "): " << (failures.empty() ? "pass" : "see failures") << "\n";
    std::cout << "gap margin certificate (401-point grid on [2,3], margin " << fmt7(v2_margin)
              << "): " << (margin_cert.verdict ? "pass" : "FAIL") << "\n";
    std::cout << "prime ratio exceptions up to 3099: " << (exceptions_ok ? "pass" : "FAIL")
              << "\n";
    std::cout << "tail inequalities r > 3: " << (tail_ok ? "pass" : "FAIL") << "\n";
    std::cout << "eta* = " << unitary::fmt_real(eta.value)
              << " (residual " << fmt7(eta.equation_residual) << ")\n";
    std::cout << (all_pass ? "ALL CHECKS PASS" : "CHECKS FAILED") << "\n";
  }
  for (const std::string& f : failures) std::cerr << "certification failed: " << f << "\n";
  return all_pass ? kExitOk : kExitVerificationFailed;
}

int run_greedy(const RunConfig& cfg, double r, double target, double eps,
               std::size_t max_primes) {
  const unitary::PrimeTable table(cfg.sieve_limit);
  const unitary::GreedyTrace trace = unitary::greedy_approximate(r, target, max_primes, eps, table, cfg.zeta_tol);
  if (cfg.format == "json") {
    unitary::JsonWriter w;
    write_json(w, trace, /*include_steps=*/true);
    emit(w);
  } else {
    std::cout << (trace.converged ? "converged" : "stalled") << " after " << trace.steps.size()
              << " steps\n";
    std::cout << "achieved " << unitary::fmt_real(trace.achieved) << " (target "
              << unitary::fmt_real(target) << ", residual " << fmt7(trace.residual) << ")\n";
    const auto& factors = trace.result.factors();
    if (factors.size() <= 12) {
      std::cout << "result: " << trace.result.to_string() << "\n";
    } else {
      const unitary::FactoredInteger head(
          std::vector<unitary::PrimePower>(factors.begin(), factors.begin() + 12));
      std::cout << "result: " << head.to_string() << " * ... (" << factors.size()
                << " primes, log10 ~ " << fmt7(trace.result.log_value() / std::log(10.0))
                << "; use --format json for the full factorization)\n";
    }
  }
  return kExitOk;
}

int run_gaps(const RunConfig& cfg, double r, int max_m) {
  const unitary::PrimeTable table(cfg.sieve_limit);
  std::vector<unitary::GapInterval> gaps;
  std::vector<int> inconclusive;
  for (int m = 1; m <= max_m; ++m) {
    try {
      if (auto gap = unitary::gap_for_m(r, m, table, cfg.zeta_tol)) gaps.push_back(*gap);
    } catch (const unitary::Inconclusive&) {
      inconclusive.push_back(m);
      std::cerr << "witness m=" << m << ": margin within error bound, skipped\n";
    }
  }
  if (cfg.format == "json") {
    unitary::JsonWriter w;
    w.begin_object();
    w.key("r").value(r);
    w.key("max_m").value(max_m);
    w.key("gaps").begin_array();
    for (const auto& gap : gaps) write_json(w, gap);
    w.end_array();
    w.key("inconclusive_witnesses").begin_array();
    for (int m : inconclusive) w.value(m);
    w.end_array();
    w.end_object();
    emit(w);
  } else {
    if (gaps.empty()) std::cout << "no certified gaps for witnesses up to " << max_m << "\n";
    for (const auto& gap : gaps)
      std::cout << "gap (" << unitary::fmt_real(gap.lo) << ", " << unitary::fmt_real(gap.hi)
                << ") witness m=" << gap.witness_m << "\n";
  }
  return kExitOk;
}

int run_enumerate(const RunConfig& cfg, double r, std::uint64_t limit, const std::string& out_path,
                  bool header) {
  const unitary::PrimeTable table(cfg.sieve_limit);
  const std::vector<double> values = unitary::enumerate_range(r, limit, table, cfg.threads);
  if (cfg.format == "json") {
    unitary::JsonWriter w;
    w.begin_object();
    w.key("r").value(r);
    w.key("limit").value(limit);
    w.key("count").value(values.size());
    w.key("values").begin_array();
    for (double v : values) w.value(v);
    w.end_array();
    w.end_object();
    if (out_path.empty()) {
      emit(w);
    } else {
      std::ofstream out(out_path);
      if (!out) throw std::runtime_error("cannot open output file " + out_path);
      out << w.str() << "\n";
    }
    return kExitOk;
  }
  if (out_path.empty()) {
    unitary::write_csv(std::cout, values, header);
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open output file " + out_path);
    unitary::write_csv(out, values, header);
  }
  return kExitOk;
}

int run_components(const RunConfig& cfg, double r, std::uint64_t limit, double resolution) {
  const unitary::PrimeTable table(cfg.sieve_limit);
  const unitary::ComponentReport report =
      unitary::estimate_components(r, limit, resolution, table, cfg.threads);
  if (cfg.format == "json") {
    unitary::JsonWriter w;
    write_json(w, report);
    emit(w);
  } else {
    std::cout << "estimated components (heuristic): " << report.estimated_components << "\n";
    std::cout << "clusters: " << report.clusters.size() << ", analytic gaps: "
              << report.analytic_gaps.size()
              << (report.gaps_consistent ? "" : " (INCONSISTENT with clusters)") << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"unitary divisor functions: range connectivity, certificates, greedy density"};
  app.require_subcommand(1);
  app.fallthrough();  // inherited: global flags may follow the subcommand

  RunConfig cfg;
  app.add_option("--sieve-limit", cfg.sieve_limit, "prime sieve limit")->capture_default_str();
  app.add_option("--zeta-tol", cfg.zeta_tol, "zeta evaluation tolerance")->capture_default_str();
  app.add_option("--format", cfg.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->capture_default_str();
  app.add_option("--threads", cfg.threads, "worker threads (0 = auto)")->capture_default_str();

  double sigma_t = 0.0;
  std::uint64_t sigma_n = 1;
  auto* cmd_sigma = app.add_subcommand("sigma", "evaluate sigma*_t(n)");
  cmd_sigma->add_option("--t", sigma_t, "exponent t")->required();
  cmd_sigma->add_option("--n", sigma_n, "positive integer n")->required();

  double eta_tol = 1e-9;
  auto* cmd_eta = app.add_subcommand("eta-star", "bisect the connectivity threshold");
  cmd_eta->add_option("--tol", eta_tol, "bracket width tolerance")->capture_default_str();

  double classify_t = 0.0;
  auto* cmd_classify = app.add_subcommand("classify", "connectivity of the closure of the range");
  cmd_classify->add_option("--t", classify_t, "exponent t")->required();

  double j_margin = unitary::kSlopeMargin;
  double v2_margin = unitary::kMarginMargin;
  double certify_eta_tol = 1e-9;
  auto* cmd_certify = app.add_subcommand("certify-all", "run the full verification pipeline");
  cmd_certify->add_option("--j-margin", j_margin, "slope certificate margin")->capture_default_str();
  cmd_certify->add_option("--v2-margin", v2_margin, "gap margin certificate margin")
      ->capture_default_str();
  cmd_certify->add_option("--eta-tol", certify_eta_tol, "eta* bisection tolerance")
      ->capture_default_str();

  double greedy_r = 0.0, greedy_target = 0.0, greedy_eps = 1e-9;
  std::size_t greedy_max_primes = 500;
  auto* cmd_greedy = app.add_subcommand("greedy", "greedy approximation of a target value");
  cmd_greedy->add_option("--r", greedy_r, "exponent r (sigma*_{-r})")->required();
  cmd_greedy->add_option("--target", greedy_target, "target value in [1, zeta(r)/zeta(2r))")
      ->required();
  cmd_greedy->add_option("--eps", greedy_eps, "convergence residual")->capture_default_str();
  cmd_greedy->add_option("--max-primes", greedy_max_primes, "prime budget")->capture_default_str();

  double gaps_r = 0.0;
  int gaps_max_m = unitary::kGapWitnessSearchMax;
  auto* cmd_gaps = app.add_subcommand("gaps", "certified gap intervals in the range");
  cmd_gaps->add_option("--r", gaps_r, "exponent r")->required();
  cmd_gaps->add_option("--max-m", gaps_max_m, "witness search bound")->capture_default_str();

  double enum_r = 0.0;
  std::uint64_t enum_limit = 0;
  std::string enum_out;
  bool enum_header = false;
  auto* cmd_enum = app.add_subcommand("enumerate", "all range values up to an argument limit");
  cmd_enum->add_option("--r", enum_r, "exponent r")->required();
  cmd_enum->add_option("--limit", enum_limit, "enumerate n = 1..limit")->required();
  cmd_enum->add_option("--out", enum_out, "write to file instead of stdout");
  cmd_enum->add_flag("--header", enum_header, "emit a CSV header line");

  double comp_r = 0.0, comp_resolution = 1e-3;
  std::uint64_t comp_limit = 0;
  auto* cmd_comp = app.add_subcommand("components", "heuristic component count of the closure");
  cmd_comp->add_option("--r", comp_r, "exponent r")->required();
  cmd_comp->add_option("--limit", comp_limit, "enumeration limit")->required();
  cmd_comp->add_option("--resolution", comp_resolution, "cluster split distance")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (cmd_sigma->parsed()) return run_sigma(cfg, sigma_t, sigma_n);
    if (cmd_eta->parsed()) return run_eta_star(cfg, eta_tol);
    if (cmd_classify->parsed()) return run_classify(cfg, classify_t);
    if (cmd_certify->parsed()) return run_certify_all(cfg, j_margin, v2_margin, certify_eta_tol);
    if (cmd_greedy->parsed()) return run_greedy(cfg, greedy_r, greedy_target, greedy_eps, greedy_max_primes);
    if (cmd_gaps->parsed()) return run_gaps(cfg, gaps_r, gaps_max_m);
    if (cmd_enum->parsed()) return run_enumerate(cfg, enum_r, enum_limit, enum_out, enum_header);
    if (cmd_comp->parsed()) return run_components(cfg, comp_r, comp_limit, comp_resolution);
  } catch (const unitary::InternalInconsistency& e) {
    std::cerr << "internal inconsistency: " << e.what() << "\n";
    return kExitVerificationFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
