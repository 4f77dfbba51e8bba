#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <thread>

#include "testing.hpp"
#include "weil/oscillator.hpp"

using namespace weil;
using testing::max_abs;

TEST_CASE("prime dft equals the dense matrix action for every p <= 101") {
  for (std::int64_t p = 5; p <= 101; ++p) {
    bool prime = true;
    for (std::int64_t d = 2; d * d <= p; ++d) prime = prime && p % d != 0;
    if (!prime) continue;
    const PrimeContext ctx = PrimeContext::make(p);
    std::mt19937_64 rng(p);
    const Vec f = testing::random_signal(p, rng);
    CAPTURE(p);
    CHECK(max_abs(Vec(prime_dft(ctx, f) - testing::dense_dft(ctx) * f)) < 1e-9);
  }
}

TEST_CASE("prime dft basics") {
  for (const std::int64_t p : {5, 13, 101}) {
    const PrimeContext ctx = PrimeContext::make(p);
    std::mt19937_64 rng(p);
    const Vec f = testing::random_signal(p, rng);

    // Unitarity and the order-4 property.
    CHECK(prime_dft(ctx, f).norm() == doctest::Approx(f.norm()).epsilon(1e-10));
    Vec four = f;
    for (int i = 0; i < 4; ++i) four = prime_dft(ctx, four);
    CHECK(max_abs(Vec(four - f)) < 1e-9);

    // Inverse direction is the adjoint.
    CHECK(max_abs(Vec(prime_dft(ctx, prime_dft(ctx, f), DftDirection::inverse) - f)) < 1e-9);
  }

  const PrimeContext ctx = PrimeContext::make(7);
  Vec delta0 = Vec::Zero(7);
  delta0[0] = Complex(1, 0);
  const Vec fd = prime_dft(ctx, delta0);
  for (std::int64_t y = 0; y < 7; ++y)
    CHECK(std::abs(fd[y] - Complex(1.0 / std::sqrt(7.0), 0)) < 1e-12);

  CHECK_THROWS_AS(prime_dft(ctx, Vec::Zero(6)), std::invalid_argument);
  CHECK_THROWS_AS(dot_naive(ctx, dft_eigenbasis(ctx), Vec::Zero(6)), std::invalid_argument);
}

TEST_CASE("mellin transform") {
  const PrimeContext ctx = PrimeContext::make(13);
  const Torus tw = torus_fourier(ctx);
  const std::int64_t n = tw.order;

  // Constant input concentrates on the trivial character.
  std::vector<Complex> ones(n, Complex(1, 0));
  const auto m0 = mellin(ctx, tw, ones, false);
  CHECK(std::abs(m0[0] - Complex(1, 0)) < 1e-12);
  for (std::int64_t k = 1; k < n; ++k) CHECK(std::abs(m0[k]) < 1e-12);

  // A pure character is an indicator at its own index.
  const auto chars = characters(tw);
  std::vector<Complex> pure(n);
  for (std::int64_t j = 0; j < n; ++j) pure[j] = chars[3].at_power(j);
  const auto m3 = mellin(ctx, tw, pure, false);
  for (std::int64_t k = 0; k < n; ++k)
    CHECK(std::abs(m3[k] - Complex(k == 3 ? 1 : 0, 0)) < 1e-12);

  // Fast and naive paths agree on random input, both tori.
  std::mt19937_64 rng(1);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (const Torus& t : {tw, torus_diagonal(ctx), torus_nonsplit(ctx)}) {
    std::vector<Complex> h(t.order);
    for (auto& v : h) v = Complex(gauss(rng), gauss(rng));
    const auto fast = mellin(ctx, t, h, true);
    const auto slow = mellin(ctx, t, h, false);
    double worst = 0.0;
    for (std::int64_t k = 0; k < t.order; ++k) worst = std::max(worst, std::abs(fast[k] - slow[k]));
    CHECK(worst < 1e-10);
  }

  CHECK_THROWS_AS(mellin(ctx, tw, std::vector<Complex>(n + 1), true), std::invalid_argument);
}

TEST_CASE("matrix coefficients") {
  const PrimeContext ctx = PrimeContext::make(13);
  const Torus tw = torus_fourier(ctx);
  std::mt19937_64 rng(2);
  const Vec phi = testing::random_signal(13, rng);
  const Vec f = testing::random_signal(13, rng);

  const auto m = matrix_coefficient(ctx, tw, phi, f);
  CHECK(std::abs(m[0] - phi.dot(f)) < 1e-12);  // identity entry is <f, phi>

  // Entry j is <f, rho(g^{-j}) phi>, checked densely.
  for (const std::int64_t j : {1L, 5L, 11L}) {
    const Mat r = rho_exact_matrix(ctx, sl2_inv(ctx, tw.elements[j]));
    CHECK(std::abs(m[j] - Complex(Vec(r * phi).dot(f))) < 1e-9);
  }

  // f orthogonal to the orbit: phi in one character space, f in another.
  const EigenBasis basis = dft_eigenbasis(ctx);
  const auto mo = matrix_coefficient(ctx, tw, basis.vectors[1].vector, basis.vectors[3].vector);
  for (const Complex& v : mo) CHECK(std::abs(v) < 1e-9);
}

TEST_CASE("integral form equals the projector coefficients, every torus kind") {
  for (const std::int64_t p : {5, 7, 13}) {
    const PrimeContext ctx = PrimeContext::make(p);
    for (const Torus& torus : {torus_fourier(ctx), torus_diagonal(ctx), torus_nonsplit(ctx)}) {
      const SpectralDecomposition dec = decompose(ctx, torus);
      std::mt19937_64 rng(3 + p);
      const Vec phi = testing::random_signal(p, rng);
      const Vec f = testing::random_signal(p, rng);

      const auto coef = mellin(ctx, torus, matrix_coefficient(ctx, torus, phi, f), false);
      for (const std::int64_t k : dec.support) {
        Vec component = Vec::Zero(p);
        for (const Vec& e : dec.spaces[k]) component += e * e.dot(phi);
        CAPTURE(p);
        CHECK(std::abs(coef[k] - component.dot(f)) < 1e-9);
      }
    }
  }
}

TEST_CASE("dot_naive and reconstruct") {
  const PrimeContext ctx = PrimeContext::make(7);  // non-split: complete basis
  const EigenBasis basis = dft_eigenbasis(ctx);
  std::mt19937_64 rng(4);
  const Vec f = testing::random_signal(7, rng);

  // Basis vectors map to indicators.
  const DotCoefficients ind = dot_naive(ctx, basis, basis.vectors[2].vector);
  for (const auto& [k, v] : ind.values) {
    const double expect = k == basis.vectors[2].character ? 1.0 : 0.0;
    CHECK(std::abs(v - Complex(expect, 0)) < 1e-10);
  }

  const DotCoefficients zero = dot_naive(ctx, basis, Vec::Zero(7));
  for (const auto& [k, v] : zero.values) CHECK(std::abs(v) < 1e-15);

  // Round trip through the expansion.
  const Vec back = reconstruct(ctx, basis, dot_naive(ctx, basis, f));
  CHECK(max_abs(Vec(back - f)) < 1e-9);

  // Parseval for the non-split canonical transform.
  const DotCoefficients coeffs = dot_naive(ctx, basis, f);
  double sum = 0.0;
  for (const auto& [k, v] : coeffs.values) sum += std::norm(v);
  CHECK(sum == doctest::Approx(f.squaredNorm()).epsilon(1e-9));

  // Label mismatch is rejected.
  DotCoefficients broken = coeffs;
  broken.values.erase(broken.values.begin());
  CHECK_THROWS_AS(reconstruct(ctx, basis, broken), std::invalid_argument);
  DotCoefficients wrong_family = coeffs;
  wrong_family.testvector = TestVector::rho_s_delta1;
  CHECK_THROWS_AS(reconstruct(ctx, basis, wrong_family), std::invalid_argument);
}

TEST_CASE("split-case round trip loses exactly the unrepresented sigma_T direction") {
  const PrimeContext ctx = PrimeContext::make(13);
  const EigenBasis basis = dft_eigenbasis(ctx);
  std::mt19937_64 rng(5);
  const Vec f = testing::random_signal(13, rng);

  // The second sigma_T vector is the kernel direction of Theta.
  const std::int64_t sigma = basis.torus.order / 2;
  Vec kernel_dir;
  int seen = 0;
  for (const BasisVector& bv : basis.vectors)
    if (bv.character == sigma && ++seen == 2) kernel_dir = bv.vector;
  REQUIRE(seen == 2);

  const Vec back = reconstruct(ctx, basis, dot_naive(ctx, basis, f));
  const Vec expect = f - kernel_dir * kernel_dir.dot(f);
  CHECK(max_abs(Vec(back - expect)) < 1e-9);
}

TEST_CASE("all-zero coefficients reconstruct to zero") {
  const PrimeContext ctx = PrimeContext::make(7);
  const EigenBasis basis = dft_eigenbasis(ctx);
  DotCoefficients zeros = dot_naive(ctx, basis, Vec::Zero(7));
  CHECK(max_abs(reconstruct(ctx, basis, zeros)) < 1e-15);
}

TEST_CASE("fot agrees with the independent integral-form route") {
  for (const std::int64_t p : {5, 13, 29}) {
    const PrimeContext ctx = PrimeContext::make(p);
    std::mt19937_64 rng(6 + p);
    const Vec f = testing::random_signal(p, rng);
    const DotCoefficients fast = fot(ctx, f);
    const DotCoefficients naive =
        dot_integral(ctx, torus_fourier(ctx), fot_test_vector(ctx), f, false);
    REQUIRE(fast.values.size() == naive.values.size());
    double worst = 0.0;
    for (const auto& [k, v] : fast.values) worst = std::max(worst, std::abs(v - naive.values.at(k)));
    CAPTURE(p);
    CHECK(worst < 1e-8);
  }
}

TEST_CASE("fot of its own test vector is flat by orthogonality of the components") {
  const PrimeContext ctx = PrimeContext::make(13);
  const DotCoefficients c = fot(ctx, fot_test_vector(ctx));
  // rho(s) phi = delta_1, so every coefficient is <phi, P_chi phi> = 1/(p-1).
  for (const auto& [k, v] : c.values) CHECK(std::abs(v - Complex(1.0 / 12.0, 0)) < 1e-10);
}

TEST_CASE("fot/canonical coefficient ratio is constant in f on one-dimensional spaces") {
  const PrimeContext ctx = PrimeContext::make(13);
  const EigenBasis basis = dft_eigenbasis(ctx);
  const std::int64_t sigma = basis.torus.order / 2;
  std::mt19937_64 rng(7);

  std::map<std::int64_t, Complex> ratio;
  for (int trial = 0; trial < 10; ++trial) {
    const Vec f = testing::random_signal(13, rng);
    const DotCoefficients fast = fot(ctx, f);
    const DotCoefficients canon = dot_naive(ctx, basis, f);
    for (const auto& [k, v] : fast.values) {
      if (k == sigma) continue;  // the two families pick independent directions there
      const Complex c = canon.values.at(k);
      if (std::abs(c) < 1e-3) continue;
      const Complex r = v / c;
      const auto it = ratio.find(k);
      if (it == ratio.end()) {
        ratio.emplace(k, r);
      } else {
        CHECK(std::abs(r - it->second) < 1e-8);
      }
    }
  }
  CHECK(ratio.size() >= 10);  // every 1-dim character seen at least once
}

TEST_CASE("fot naive-mellin flag changes nothing but the cost") {
  const PrimeContext ctx = PrimeContext::make(29);
  std::mt19937_64 rng(8);
  const Vec f = testing::random_signal(29, rng);
  const DotCoefficients a = fot(ctx, f, false);
  const DotCoefficients b = fot(ctx, f, true);
  for (const auto& [k, v] : a.values) CHECK(std::abs(v - b.values.at(k)) < 1e-10);
}

TEST_CASE("fot rejects the non-split case") {
  const PrimeContext ctx = PrimeContext::make(7);
  CHECK_THROWS_AS(fot(ctx, Vec::Zero(7)), std::domain_error);
  CHECK_THROWS_WITH_AS(fot(ctx, Vec::Zero(7)), doctest::Contains("open problem"),
                       std::domain_error);
}

TEST_CASE("transforms are safe to apply concurrently") {
  const PrimeContext ctx = PrimeContext::make(29);
  std::mt19937_64 rng(10);
  std::vector<Vec> inputs;
  for (int i = 0; i < 8; ++i) inputs.push_back(testing::random_signal(29, rng));
  std::vector<DotCoefficients> expected;
  for (const Vec& f : inputs) expected.push_back(fot(ctx, f));

  std::vector<DotCoefficients> got(inputs.size());
  std::vector<std::thread> pool;
  for (std::size_t i = 0; i < inputs.size(); ++i)
    pool.emplace_back([&, i] { got[i] = fot(ctx, inputs[i]); });
  for (auto& t : pool) t.join();

  for (std::size_t i = 0; i < inputs.size(); ++i)
    for (const auto& [k, v] : expected[i].values) CHECK(std::abs(v - got[i].values.at(k)) == 0.0);
}

TEST_CASE("dot_integral drops the empty sigma_T coefficient in the non-split case") {
  const PrimeContext ctx = PrimeContext::make(7);
  const Torus tw = torus_fourier(ctx);
  std::mt19937_64 rng(9);
  const Vec phi = testing::random_signal(7, rng);
  const Vec f = testing::random_signal(7, rng);
  const DotCoefficients c = dot_integral(ctx, tw, phi, f, false);
  CHECK(c.values.size() == 7);
  CHECK(c.values.count(tw.order / 2) == 0);
}
