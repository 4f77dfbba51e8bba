#include "weil/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <random>
#include <stdexcept>
#include <thread>

#include <Eigen/Eigenvalues>

#include "weil/heisenberg.hpp"
#include "weil/modp.hpp"
#include "weil/oscillator.hpp"
#include "weil/spectral.hpp"
#include "weil/symplectic.hpp"
#include "weil/weil.hpp"

namespace weil::verify {

namespace {

constexpr int kRandomPairs = 100;

std::uint64_t mix_seed(std::uint64_t seed, std::int64_t p) {
  std::uint64_t x = seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(p);
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

SL2Element random_sl2(const PrimeContext& ctx, std::mt19937_64& rng) {
  const std::int64_t p = ctx.p();
  std::uniform_int_distribution<std::int64_t> unif(0, p - 1);
  const std::int64_t a = unif(rng);
  if (a != 0) {
    const std::int64_t b = unif(rng), c = unif(rng);
    return sl2(ctx, a, b, c, ctx.mul(ctx.add(1, ctx.mul(b, c)), ctx.inv(a)));
  }
  std::uniform_int_distribution<std::int64_t> nonzero(1, p - 1);
  const std::int64_t b = nonzero(rng);
  return sl2(ctx, 0, b, ctx.neg(ctx.inv(b)), unif(rng));
}

HeisenbergElement random_heis(const PrimeContext& ctx, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> unif(0, ctx.p() - 1);
  return HeisenbergElement{unif(rng), unif(rng), unif(rng)};
}

Vec random_signal(std::int64_t p, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec f(p);
  for (std::int64_t x = 0; x < p; ++x) f[x] = Complex(gauss(rng), gauss(rng));
  return f;
}

/// Definitional DFT matrix F(y, x) = psi(x y) / sqrt(p).
Mat dft_matrix(const PrimeContext& ctx) {
  const std::int64_t p = ctx.p();
  const double scale = 1.0 / std::sqrt(static_cast<double>(p));
  Mat f(p, p);
  for (std::int64_t y = 0; y < p; ++y)
    for (std::int64_t x = 0; x < p; ++x) f(y, x) = ctx.psi(ctx.mul(x, y)) * scale;
  return f;
}

double tol_or(const Options& opts, double dflt) {
  return opts.tol_override > 0 ? opts.tol_override : dflt;
}

void check_dft_id(const PrimeContext& ctx, const Options& opts, std::vector<CheckResult>& out) {
  const std::int64_t p = ctx.p();
  const Mat f = dft_matrix(ctx);
  const Mat rho_w = rho_exact_matrix(ctx, weyl_element(ctx));
  const Complex c = fourth_root((p - 1) / 2);
  const double residual = (f - c * rho_w).cwiseAbs().maxCoeff();
  const double tol = tol_or(opts, tolerances::kDftId);
  out.push_back({"dft-id", p, "max|F - C rho(w)|", residual < tol, residual, tol, ""});
}

void check_egorov(const PrimeContext& ctx, const Options& opts, std::vector<CheckResult>& out) {
  std::mt19937_64 rng(mix_seed(opts.seed, ctx.p()));
  double worst = 0.0;
  for (int i = 0; i < kRandomPairs; ++i) {
    worst = std::max(worst, egorov_residual(ctx, random_sl2(ctx, rng), random_heis(ctx, rng)));
  }
  const double tol = tol_or(opts, tolerances::kEgorov);
  out.push_back(
      {"egorov", ctx.p(), "max egorov residual, 100 random (g, h)", worst < tol, worst, tol, ""});
}

void check_homomorphism(const PrimeContext& ctx, const Options& opts,
                        std::vector<CheckResult>& out) {
  std::mt19937_64 rng(mix_seed(opts.seed, ctx.p()));
  double worst = 0.0;
  for (int i = 0; i < kRandomPairs; ++i) {
    const SL2Element g1 = random_sl2(ctx, rng);
    const SL2Element g2 = random_sl2(ctx, rng);
    const Mat lhs = rho_exact_matrix(ctx, g1) * rho_exact_matrix(ctx, g2);
    const Mat rhs = rho_exact_matrix(ctx, sl2_mul(ctx, g1, g2));
    worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
  }
  const double tol = tol_or(opts, tolerances::kHomomorphism);
  out.push_back({"homomorphism", ctx.p(), "max|rho(g1 g2) - rho(g1) rho(g2)|, 100 random pairs",
                 worst < tol, worst, tol, ""});
}

void check_dims(const PrimeContext& ctx, const Options& opts, std::vector<CheckResult>& out) {
  (void)opts;
  const std::int64_t p = ctx.p();
  const auto run = [&](const char* name, Torus torus) {
    std::string detail;
    bool pass = true;
    try {
      const SpectralDecomposition dec = decompose(ctx, std::move(torus));
      const std::int64_t sigma = dec.torus.order / 2;
      detail = "dim sigma_T = " + std::to_string(dec.dim(sigma));
    } catch (const std::exception& e) {
      pass = false;
      detail = e.what();
    }
    out.push_back({"dims", p, std::string("character-space dims, ") + name, pass, 0.0, 0.0, detail});
  };
  run("fourier torus", torus_fourier(ctx));
  run("diagonal torus", torus_diagonal(ctx));
  run("nonsplit torus", torus_nonsplit(ctx));
}

void check_mult(const PrimeContext& ctx, const Options& opts, std::vector<CheckResult>& out) {
  (void)opts;
  const std::int64_t p = ctx.p();
  bool pass = true;
  std::string detail;
  try {
    const MultiplicityTables t = multiplicities(ctx);  // validates closed forms internally
    // Generic eigendecomposition of the dense DFT matrix must give the same
    // n-multiset after rounding to the nearest fourth root of unity.
    const Eigen::ComplexEigenSolver<Mat> solver(dft_matrix(ctx), false);
    std::array<std::int64_t, 4> hist{};
    const std::array<Complex, 4> roots{Complex(1, 0), Complex(-1, 0), Complex(0, 1),
                                       Complex(0, -1)};
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
      const Complex ev = solver.eigenvalues()[i];
      std::size_t best = 0;
      for (std::size_t r = 1; r < roots.size(); ++r)
        if (std::abs(ev - roots[r]) < std::abs(ev - roots[best])) best = r;
      ++hist[best];
    }
    if (hist != t.n) {
      pass = false;
      detail = "eigensolver multiset disagrees with the n table";
    } else {
      detail = "m = (" + std::to_string(t.m[0]) + "," + std::to_string(t.m[1]) + "," +
               std::to_string(t.m[2]) + "," + std::to_string(t.m[3]) + "), n = (" +
               std::to_string(t.n[0]) + "," + std::to_string(t.n[1]) + "," +
               std::to_string(t.n[2]) + "," + std::to_string(t.n[3]) + ")";
    }
  } catch (const std::exception& e) {
    pass = false;
    detail = e.what();
  }
  out.push_back({"mult", p, "multiplicity tables vs closed forms and eigensolver", pass, 0.0, 0.0,
                 detail});
}

void check_fot(const PrimeContext& ctx, const Options& opts, std::vector<CheckResult>& out) {
  const std::int64_t p = ctx.p();
  if (p % 4 != 1) return;  // no fast path for the non-split torus
  std::mt19937_64 rng(mix_seed(opts.seed, p));
  const Vec f = random_signal(p, rng);
  const Vec phi = fot_test_vector(ctx);
  const DotCoefficients fast = fot(ctx, f);
  const DotCoefficients naive = dot_integral(ctx, torus_fourier(ctx), phi, f, false);
  double worst = 0.0;
  for (const auto& [k, v] : fast.values) worst = std::max(worst, std::abs(v - naive.values.at(k)));
  const double tol = tol_or(opts, tolerances::kFot);
  out.push_back({"fot", p, "max|fast - naive| over coefficients", worst < tol, worst, tol, ""});
}

}  // namespace

std::vector<std::int64_t> primes_in(std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> out;
  for (std::int64_t n = std::max<std::int64_t>(lo, 2); n <= hi; ++n) {
    bool prime = n >= 2;
    for (std::int64_t d = 2; d * d <= n; ++d)
      if (n % d == 0) {
        prime = false;
        break;
      }
    if (prime) out.push_back(n);
  }
  return out;
}

bool suite_known(const std::string& suite) {
  return suite == "all" || suite == "dft-id" || suite == "egorov" || suite == "homomorphism" ||
         suite == "dims" || suite == "mult" || suite == "fot";
}

std::vector<CheckResult> run_suite(const std::string& suite, std::int64_t pmin, std::int64_t pmax,
                                   const Options& opts) {
  if (!suite_known(suite)) throw std::invalid_argument("unknown suite: " + suite);
  const std::vector<std::int64_t> primes = primes_in(std::max<std::int64_t>(pmin, 5), pmax);

  int threads = opts.threads > 0 ? opts.threads
                                 : static_cast<int>(std::thread::hardware_concurrency());
  if (const char* env = std::getenv("WEIL_NUM_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) threads = std::min(threads, cap);
  }
  threads = std::max(1, std::min<int>(threads, static_cast<int>(primes.size())));

  std::vector<std::vector<CheckResult>> per_prime(primes.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= primes.size()) break;
      const PrimeContext ctx = PrimeContext::make(primes[i]);
      std::vector<CheckResult>& out = per_prime[i];
      if (suite == "all" || suite == "dft-id") check_dft_id(ctx, opts, out);
      if (suite == "all" || suite == "egorov") check_egorov(ctx, opts, out);
      if (suite == "all" || suite == "homomorphism") check_homomorphism(ctx, opts, out);
      if (suite == "all" || suite == "dims") check_dims(ctx, opts, out);
      if (suite == "all" || suite == "mult") check_mult(ctx, opts, out);
      if (suite == "all" || suite == "fot") check_fot(ctx, opts, out);
    }
  };

  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  std::vector<CheckResult> results;
  for (const auto& chunk : per_prime) results.insert(results.end(), chunk.begin(), chunk.end());
  return results;
}

}  // namespace weil::verify
