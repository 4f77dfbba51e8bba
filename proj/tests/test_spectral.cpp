#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>

#include <Eigen/Eigenvalues>

#include "testing.hpp"
#include "weil/spectral.hpp"

using namespace weil;
using testing::max_abs;

namespace {

Mat projector_from_space(const std::vector<Vec>& space, std::int64_t p) {
  Mat out = Mat::Zero(p, p);
  for (const Vec& e : space) out += e * e.adjoint();
  return out;
}

}  // namespace

TEST_CASE("dimension table, split fourier torus p = 5") {
  const PrimeContext ctx = PrimeContext::make(5);
  const SpectralDecomposition dec = decompose(ctx, torus_fourier(ctx));
  CHECK(dec.torus.order == 4);
  CHECK(dec.dim(0) == 1);
  CHECK(dec.dim(1) == 1);
  CHECK(dec.dim(2) == 2);  // sigma_T
  CHECK(dec.dim(3) == 1);
  CHECK(dec.support == std::vector<std::int64_t>{0, 1, 2, 3});
}

TEST_CASE("dimension table, non-split fourier torus p = 7") {
  const PrimeContext ctx = PrimeContext::make(7);
  const SpectralDecomposition dec = decompose(ctx, torus_fourier(ctx));
  CHECK(dec.torus.order == 8);
  CHECK(dec.dim(4) == 0);  // sigma_T is empty
  std::int64_t total = 0;
  for (std::int64_t k = 0; k < 8; ++k) total += dec.dim(k);
  CHECK(total == 7);
  CHECK(dec.support.size() == 7);
}

TEST_CASE("dimension table holds for the diagonal and non-split tori") {
  for (const std::int64_t p : {5, 7}) {
    const PrimeContext ctx = PrimeContext::make(p);
    const SpectralDecomposition da = decompose(ctx, torus_diagonal(ctx));
    CHECK(da.dim(da.torus.order / 2) == 2);
    const SpectralDecomposition dn = decompose(ctx, torus_nonsplit(ctx));
    CHECK(dn.dim(dn.torus.order / 2) == 0);
  }
}

TEST_CASE("projenvironment: idempotent, orthogonal, resolution of identity, F-stable") {
  for (const std::int64_t p : {5, 7}) {
    const PrimeContext ctx = PrimeContext::make(p);
    const SpectralDecomposition dec = decompose(ctx, torus_fourier(ctx));
    std::vector<Mat> projectors;
    for (std::int64_t k = 0; k < dec.torus.order; ++k)
      projectors.push_back(projector_from_space(dec.spaces[k], p));

    Mat sum = Mat::Zero(p, p);
    for (const Mat& pr : projectors) sum += pr;
    CHECK(max_abs(Mat(sum - Mat::Identity(p, p))) < 1e-9);

    for (std::size_t j = 0; j < projectors.size(); ++j) {
      CHECK(max_abs(Mat(projectors[j] * projectors[j] - projectors[j])) < 1e-9);
      for (std::size_t k = j + 1; k < projectors.size(); ++k)
        CHECK(max_abs(Mat(projectors[j] * projectors[k])) < 1e-9);
    }

    const Mat f = testing::dense_dft(ctx);
    for (const Mat& pr : projectors)
      CHECK(max_abs(Mat((Mat::Identity(p, p) - pr) * f * pr)) < 1e-9);
  }
}

TEST_CASE("character spaces are honest eigenspaces") {
  const PrimeContext ctx = PrimeContext::make(13);
  const SpectralDecomposition dec = decompose(ctx, torus_fourier(ctx));
  const auto chars = characters(dec.torus);
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::int64_t> pick(0, dec.torus.order - 1);
  for (const std::int64_t k : dec.support) {
    for (const Vec& v : dec.spaces[k]) {
      for (int trial = 0; trial < 4; ++trial) {
        const std::int64_t j = pick(rng);
        const Mat r = rho_exact_matrix(ctx, dec.torus.elements[j]);
        CHECK(max_abs(Vec(r * v - chars[k].at_power(j) * v)) < 1e-9);
      }
    }
  }
}

TEST_CASE("canonical basis: phase rule, determinism, eigen-residual") {
  const PrimeContext ctx = PrimeContext::make(13);
  const EigenBasis basis = canonical_basis(ctx, decompose(ctx, torus_fourier(ctx)));
  CHECK(static_cast<std::int64_t>(basis.vectors.size()) == 13);

  for (const BasisVector& bv : basis.vectors) {
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < bv.vector.size(); ++i)
      if (std::abs(bv.vector[i]) > std::abs(bv.vector[best])) best = i;
    CHECK(bv.vector[best].real() > 0);
    CHECK(std::abs(bv.vector[best].imag()) < 1e-12);
    CHECK(bv.vector.norm() == doctest::Approx(1.0).epsilon(1e-12));
  }

  const EigenBasis again = canonical_basis(ctx, decompose(ctx, torus_fourier(ctx)));
  for (std::size_t i = 0; i < basis.vectors.size(); ++i) {
    CHECK(basis.vectors[i].character == again.vectors[i].character);
    CHECK(max_abs(Vec(basis.vectors[i].vector - again.vectors[i].vector)) < 1e-12);
  }

  const Mat rw = rho_exact_matrix(ctx, weyl_element(ctx));
  const std::int64_t jw = basis.torus.dlog_of(weyl_element(ctx));
  const auto chars = characters(basis.torus);
  for (const BasisVector& bv : basis.vectors)
    CHECK(max_abs(Vec(rw * bv.vector - chars[bv.character].at_power(jw) * bv.vector)) < 1e-9);
}

TEST_CASE("dft eigenbasis labels") {
  const std::map<std::string, int> expect5{{"+1", 2}, {"-1", 1}, {"+i", 1}, {"-i", 1}};
  const std::map<std::string, int> expect7{{"+1", 2}, {"-1", 2}, {"+i", 2}, {"-i", 1}};
  for (const auto& [p, expect] :
       std::vector<std::pair<std::int64_t, std::map<std::string, int>>>{{5, expect5}, {7, expect7}}) {
    const PrimeContext ctx = PrimeContext::make(p);
    const EigenBasis basis = dft_eigenbasis(ctx);
    REQUIRE(static_cast<std::int64_t>(basis.vectors.size()) == p);
    const Mat f = testing::dense_dft(ctx);
    std::map<std::string, int> hist;
    for (const BasisVector& bv : basis.vectors) {
      REQUIRE(bv.dft_eigenvalue.has_value());
      const Complex mu = *bv.dft_eigenvalue;
      CHECK(max_abs(Vec(f * bv.vector - mu * bv.vector)) < 1e-9);
      if (mu == Complex(1, 0)) ++hist["+1"];
      if (mu == Complex(-1, 0)) ++hist["-1"];
      if (mu == Complex(0, 1)) ++hist["+i"];
      if (mu == Complex(0, -1)) ++hist["-i"];
    }
    CAPTURE(p);
    CHECK(hist == expect);
  }
}

TEST_CASE("multiplicity tables: frozen rows and closed forms") {
  const MultiplicityTables t13 = multiplicities(PrimeContext::make(13));
  CHECK(t13.m == std::array<std::int64_t, 4>{3, 4, 3, 3});  // p = 8k+5 row, k = 1

  const MultiplicityTables t7 = multiplicities(PrimeContext::make(7));
  CHECK(t7.m == std::array<std::int64_t, 4>{2, 1, 2, 2});  // p = 8k+7 row, k = 0

  // p = 5: C = i^2 = -1, so n(+1) = m(-1) = 2.
  const MultiplicityTables t5 = multiplicities(PrimeContext::make(5));
  CHECK(t5.n[0] == 2);
  CHECK(t5.n[0] == t5.m[1]);

  // multiplicities() itself validates against the closed forms; a throw here
  // would fail the test.
  for (const std::int64_t p : {5, 7, 11, 13, 17, 19, 23, 29, 31})
    CHECK_NOTHROW(multiplicities(PrimeContext::make(p)));

  // The n table must be the relation image of the m table.
  for (const std::int64_t p : {5, 7, 11, 13, 17, 19}) {
    const MultiplicityTables t = multiplicity_closed_form(p);
    std::int64_t total_m = 0, total_n = 0;
    for (int i = 0; i < 4; ++i) {
      total_m += t.m[i];
      total_n += t.n[i];
    }
    CHECK(total_m == p);
    CHECK(total_n == p);
  }
}

TEST_CASE("eigenvalue labels match a generic eigendecomposition") {
  for (const std::int64_t p : {5, 7, 13}) {
    const PrimeContext ctx = PrimeContext::make(p);
    const MultiplicityTables t = multiplicities(ctx);
    const Eigen::ComplexEigenSolver<Mat> solver(testing::dense_dft(ctx), false);
    std::array<std::int64_t, 4> hist{};
    const std::array<Complex, 4> roots{Complex(1, 0), Complex(-1, 0), Complex(0, 1),
                                       Complex(0, -1)};
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
      const Complex ev = solver.eigenvalues()[i];
      std::size_t best = 0;
      for (std::size_t r = 1; r < 4; ++r)
        if (std::abs(ev - roots[r]) < std::abs(ev - roots[best])) best = r;
      ++hist[best];
    }
    CHECK(hist == t.n);
  }
}

TEST_CASE("basis gram matrix is the identity") {
  const PrimeContext ctx = PrimeContext::make(17);
  const EigenBasis basis = dft_eigenbasis(ctx);
  Mat gram(basis.vectors.size(), basis.vectors.size());
  for (std::size_t i = 0; i < basis.vectors.size(); ++i)
    for (std::size_t j = 0; j < basis.vectors.size(); ++j)
      gram(i, j) = basis.vectors[i].vector.dot(basis.vectors[j].vector);
  CHECK(max_abs(Mat(gram - Mat::Identity(gram.rows(), gram.cols()))) < 1e-8);
}
