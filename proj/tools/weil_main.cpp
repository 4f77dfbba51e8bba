// Command-line driver: eigenbasis export, forward/inverse oscillator
// transforms, invariant verification suites, multiplicity tables, and the
// naive-vs-fast benchmark.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "weil/io.hpp"
#include "weil/modp.hpp"
#include "weil/oscillator.hpp"
#include "weil/spectral.hpp"
#include "weil/verify.hpp"
#include "weil/weil.hpp"

namespace {

using nlohmann::json;
using namespace weil;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitUsage = 2;

EigenBasis basis_for(const PrimeContext& ctx, const std::string& torus_tag) {
  if (torus_tag == "tw") return dft_eigenbasis(ctx);
  if (torus_tag == "diag") return canonical_basis(ctx, decompose(ctx, torus_diagonal(ctx)));
  if (torus_tag == "nonsplit") return canonical_basis(ctx, decompose(ctx, torus_nonsplit(ctx)));
  throw std::invalid_argument("unknown torus: " + torus_tag);
}

int cmd_eigenbasis(std::int64_t p, const std::string& out_path, const std::string& format) {
  const PrimeContext ctx = PrimeContext::make(p);
  const EigenBasis basis = dft_eigenbasis(ctx);
  io::write_basis(out_path, io::to_basis_file(basis), format);
  std::cout << "wrote " << basis.vectors.size() << " eigenvectors for p = " << p << " to "
            << out_path << "\n";
  return kExitOk;
}

int cmd_dot(const std::string& input, const std::string& out_path, const std::string& torus_tag,
            const std::string& testvector, bool fast, bool inverse, std::int64_t p_flag) {
  if (inverse) {
    const auto [coeffs, tag] = io::read_coefficients(input);
    if (p_flag > 0 && p_flag != coeffs.p)
      throw std::invalid_argument("-p disagrees with the coefficients file");
    const PrimeContext ctx = PrimeContext::make(coeffs.p);
    const EigenBasis basis = basis_for(ctx, tag);
    const Vec f = reconstruct(ctx, basis, coeffs);
    io::write_signal(out_path, io::SignalFile{ctx.p(), f});
    std::cout << "wrote reconstructed signal to " << out_path << "\n";
    return kExitOk;
  }

  const io::SignalFile sig = io::read_signal(input);
  if (p_flag > 0 && p_flag != sig.p)
    throw std::invalid_argument("-p disagrees with the signal file");
  const PrimeContext ctx = PrimeContext::make(sig.p);

  DotCoefficients coeffs;
  if (fast || testvector == "rho-s-delta1") {
    if (torus_tag != "tw")
      throw std::invalid_argument("the rho-s-delta1 test vector is defined for --torus tw");
    if (fast) {
      coeffs = fot(ctx, sig.values);  // rejects p = 3 (mod 4)
    } else {
      if (ctx.p() % 4 != 1)
        throw std::invalid_argument(
            "the rho-s-delta1 test vector requires p = 1 (mod 4)");
      coeffs = dot_integral(ctx, torus_fourier(ctx), fot_test_vector(ctx), sig.values, false);
    }
  } else {
    const EigenBasis basis = basis_for(ctx, torus_tag);
    coeffs = dot_naive(ctx, basis, sig.values);
  }
  io::write_coefficients(out_path, coeffs, torus_tag);
  std::cout << "wrote " << coeffs.values.size() << " coefficients to " << out_path << "\n";
  return kExitOk;
}

int cmd_verify(const std::string& suite, std::int64_t pmin, std::int64_t pmax, double tol,
               std::uint64_t seed, const std::string& out_path) {
  verify::Options opts;
  opts.tol_override = tol;
  opts.seed = seed;
  const std::vector<verify::CheckResult> results = verify::run_suite(suite, pmin, pmax, opts);

  int failed = 0;
  const verify::CheckResult* first_failure = nullptr;
  for (const auto& r : results) {
    std::cout << "[" << r.suite << "] p=" << r.p << " " << r.name;
    if (r.tol > 0) std::cout << ": residual=" << r.residual << " tol=" << r.tol;
    if (!r.detail.empty()) std::cout << " (" << r.detail << ")";
    std::cout << (r.pass ? " PASS" : " FAIL") << "\n";
    if (!r.pass && ++failed == 1) first_failure = &r;
  }
  std::cout << "SUMMARY: " << results.size() - failed << "/" << results.size()
            << " checks passed\n";
  if (first_failure)
    std::cout << "FIRST FAILURE: [" << first_failure->suite << "] p=" << first_failure->p << " "
              << first_failure->name << " residual=" << first_failure->residual << " "
              << first_failure->detail << "\n";

  if (!out_path.empty()) {
    json checks = json::array();
    for (const auto& r : results)
      checks.push_back(json{{"suite", r.suite},
                            {"p", r.p},
                            {"name", r.name},
                            {"pass", r.pass},
                            {"residual", r.residual},
                            {"tol", r.tol},
                            {"detail", r.detail}});
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << json{{"suite", suite},
                {"pmin", pmin},
                {"pmax", pmax},
                {"seed", seed},
                {"checks", checks},
                {"passed", results.size() - failed},
                {"failed", failed}}
               .dump(1)
        << "\n";
  }
  return failed == 0 ? kExitOk : kExitVerifyFailure;
}

int cmd_mult_table(std::int64_t pmin, std::int64_t pmax, const std::string& format,
                   const std::string& out_path) {
  const std::vector<std::int64_t> primes = verify::primes_in(pmin, pmax);
  if (primes.empty()) throw std::invalid_argument("no primes in range");
  json rows = json::array();
  std::cout << "p     m(+1) m(-1) m(+i) m(-i)   n(+1) n(-1) n(+i) n(-i)\n";
  for (const std::int64_t p : primes) {
    const PrimeContext ctx = PrimeContext::make(p);
    const MultiplicityTables t = multiplicities(ctx);
    std::cout << p;
    for (std::size_t i = std::to_string(p).size(); i < 6; ++i) std::cout << ' ';
    for (int i = 0; i < 4; ++i) std::cout << t.m[i] << "     ";
    std::cout << "  ";
    for (int i = 0; i < 4; ++i) std::cout << t.n[i] << "     ";
    std::cout << "\n";
    rows.push_back(json{{"p", p},
                        {"m", {{"+1", t.m[0]}, {"-1", t.m[1]}, {"+i", t.m[2]}, {"-i", t.m[3]}}},
                        {"n", {{"+1", t.n[0]}, {"-1", t.n[1]}, {"+i", t.n[2]}, {"-i", t.n[3]}}}});
  }
  if (format == "json" && out_path.empty()) std::cout << rows.dump(1) << "\n";
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << rows.dump(1) << "\n";
  }
  return kExitOk;
}

int cmd_bench(const std::vector<std::int64_t>& ps, int reps, std::uint64_t seed,
              const std::string& out_path) {
  if (reps <= 0) throw std::invalid_argument("--reps must be positive");
  using clock = std::chrono::steady_clock;
  std::string csv = "p,t_naive,t_fast,ratio\n";
  for (const std::int64_t p : ps) {
    const PrimeContext ctx = PrimeContext::make(p);
    if (p % 4 != 1) throw std::invalid_argument("bench: p must be 1 (mod 4), got " + std::to_string(p));

    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(p));
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vec f(p);
    for (std::int64_t x = 0; x < p; ++x) f[x] = Complex(gauss(rng), gauss(rng));

    // Warm-up builds the context tables, the transform plans and the resolved
    // rho(s) scalar; the timed section measures the transform alone.
    const DotCoefficients warm_fast = fot(ctx, f, false);
    const DotCoefficients warm_naive = fot(ctx, f, true);
    double check = 0.0;
    for (const auto& [k, v] : warm_fast.values)
      check = std::max(check, std::abs(v - warm_naive.values.at(k)));

    std::vector<double> t_naive, t_fast;
    for (int r = 0; r < reps; ++r) {
      auto t0 = clock::now();
      const DotCoefficients cn = fot(ctx, f, true);
      auto t1 = clock::now();
      const DotCoefficients cf = fot(ctx, f, false);
      auto t2 = clock::now();
      t_naive.push_back(std::chrono::duration<double>(t1 - t0).count());
      t_fast.push_back(std::chrono::duration<double>(t2 - t1).count());
      (void)cn;
      (void)cf;
    }
    std::sort(t_naive.begin(), t_naive.end());
    std::sort(t_fast.begin(), t_fast.end());
    const double med_naive = t_naive[t_naive.size() / 2];
    const double med_fast = t_fast[t_fast.size() / 2];
    char line[160];
    std::snprintf(line, sizeof(line), "%lld,%.6g,%.6g,%.3f\n", static_cast<long long>(p),
                  med_naive, med_fast, med_naive / med_fast);
    csv += line;
    std::cerr << "p=" << p << " max|fast-naive|=" << check << "\n";
  }
  std::cout << csv;
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << csv;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weil-representation eigenbasis of the prime-length DFT and the fast "
               "oscillator transform"};
  app.require_subcommand(1);

  // eigenbasis
  auto* eb = app.add_subcommand("eigenbasis", "export the canonical DFT eigenbasis");
  std::int64_t eb_p = 0;
  std::string eb_out, eb_format = "json";
  eb->add_option("-p", eb_p, "prime")->required();
  eb->add_option("-o,--output", eb_out, "output path")->required();
  eb->add_option("--format", eb_format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}));

  // dot
  auto* dot = app.add_subcommand("dot", "forward/inverse discrete oscillator transform");
  std::string dot_in, dot_out, dot_torus = "tw", dot_tv = "canonical";
  bool dot_fast = false, dot_inverse = false;
  std::int64_t dot_p = 0;
  dot->add_option("input", dot_in, "signal JSON (or coefficients JSON with --inverse)")
      ->required();
  dot->add_option("-o,--output", dot_out, "output path")->required();
  dot->add_option("-p", dot_p, "prime (cross-checked against the input file)");
  dot->add_option("--torus", dot_torus, "tw | diag | nonsplit")
      ->check(CLI::IsMember({"tw", "diag", "nonsplit"}));
  dot->add_option("--testvector", dot_tv, "canonical | rho-s-delta1")
      ->check(CLI::IsMember({"canonical", "rho-s-delta1"}));
  dot->add_flag("--fast", dot_fast, "O(p log p) fast path (p = 1 mod 4, torus tw)");
  dot->add_flag("--inverse", dot_inverse, "reconstruct a signal from coefficients");

  // verify
  auto* ver = app.add_subcommand("verify", "run invariant suites over a prime range");
  std::string ver_suite = "all", ver_out;
  std::int64_t ver_pmin = 5, ver_pmax = 0;
  double ver_tol = 0.0;
  std::uint64_t ver_seed = 0;
  ver->add_option("suite", ver_suite,
                  "all | dft-id | egorov | homomorphism | dims | mult | fot")
      ->check(CLI::IsMember({"all", "dft-id", "egorov", "homomorphism", "dims", "mult", "fot"}));
  ver->add_option("-p", ver_pmin, "smallest prime (default 5)");
  ver->add_option("--pmax", ver_pmax, "largest prime (default: same as -p)");
  ver->add_option("--tol", ver_tol, "override every threshold");
  ver->add_option("--seed", ver_seed, "RNG seed (default 0)");
  ver->add_option("-o,--output", ver_out, "machine-readable JSON summary path");

  // mult-table
  auto* mt = app.add_subcommand("mult-table", "eigenvalue multiplicity tables");
  std::int64_t mt_pmin = 0, mt_pmax = 0;
  std::string mt_format = "text", mt_out;
  mt->add_option("-p", mt_pmin, "smallest prime")->required();
  mt->add_option("--pmax", mt_pmax, "largest prime (default: same as -p)");
  mt->add_option("--format", mt_format, "text | json")->check(CLI::IsMember({"text", "json"}));
  mt->add_option("-o,--output", mt_out, "JSON output path");

  // bench
  auto* bench = app.add_subcommand("bench", "naive vs fast oscillator-transform timings (CSV)");
  std::vector<std::int64_t> bench_ps;
  int bench_reps = 5;
  std::uint64_t bench_seed = 0;
  std::string bench_out;
  bench->add_option("-p", bench_ps, "prime(s), each = 1 (mod 4)")->required();
  bench->add_option("--reps", bench_reps, "repetitions per prime (median reported)");
  bench->add_option("--seed", bench_seed, "RNG seed (default 0)");
  bench->add_option("-o,--output", bench_out, "CSV output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*eb) return cmd_eigenbasis(eb_p, eb_out, eb_format);
    if (*dot) return cmd_dot(dot_in, dot_out, dot_torus, dot_tv, dot_fast, dot_inverse, dot_p);
    if (*ver)
      return cmd_verify(ver_suite, ver_pmin, ver_pmax > 0 ? ver_pmax : ver_pmin, ver_tol, ver_seed,
                        ver_out);
    if (*mt) return cmd_mult_table(mt_pmin, mt_pmax > 0 ? mt_pmax : mt_pmin, mt_format, mt_out);
    if (*bench) return cmd_bench(bench_ps, bench_reps, bench_seed, bench_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
