// Invariant verification suites shared by the CLI: per-prime checks of the
// DFT identification, the Egorov identity, the representation property, the
// dimension and multiplicity tables, and the fast-vs-naive transform.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace weil::verify {

/// Default thresholds for the suites; Options::tol_override replaces all of
/// them at once.
namespace tolerances {
inline constexpr double kDftId = 1e-9;         // max|F - C rho(w)|
inline constexpr double kEgorov = 1e-9;        // max-entry Egorov residual
inline constexpr double kHomomorphism = 1e-9;  // max|rho(g1 g2) - rho(g1) rho(g2)|
inline constexpr double kFot = 1e-8;           // max|fast - naive| coefficient
}  // namespace tolerances

struct CheckResult {
  std::string suite;
  std::int64_t p = 0;
  std::string name;
  bool pass = false;
  double residual = 0.0;
  double tol = 0.0;
  std::string detail;
};

struct Options {
  double tol_override = 0.0;  // 0 keeps the per-check defaults
  std::uint64_t seed = 0;
  int threads = 0;  // 0: hardware_concurrency, capped by WEIL_NUM_THREADS
};

std::vector<std::int64_t> primes_in(std::int64_t lo, std::int64_t hi);

/// Known suite names: dft-id, egorov, homomorphism, dims, mult, fot, all.
bool suite_known(const std::string& suite);

/// Runs one suite (or all of them) over the primes in [pmin, pmax], fanning
/// out per prime across the worker pool; results come back in prime order.
std::vector<CheckResult> run_suite(const std::string& suite, std::int64_t pmin, std::int64_t pmax,
                                   const Options& opts);

}  // namespace weil::verify
