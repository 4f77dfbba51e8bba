#include "weil/spectral.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "weil/fft.hpp"

namespace weil {

namespace {

constexpr double kRankTol = 1e-8;

/// Orthonormal basis of the column space: pivoted modified Gram-Schmidt with
/// the rank cutoff relative to the largest initial column norm. An all-small
/// matrix (empty character space) yields rank 0.
std::vector<Vec> orthonormal_image(const Mat& m) {
  const auto p = m.cols();
  std::vector<Vec> cols(p);
  std::vector<double> norms(p);
  double max_norm = 0.0;
  for (Eigen::Index j = 0; j < p; ++j) {
    cols[j] = m.col(j);
    norms[j] = cols[j].norm();
    max_norm = std::max(max_norm, norms[j]);
  }
  std::vector<Vec> basis;
  if (max_norm < kRankTol) return basis;
  const double threshold = kRankTol * max_norm;
  while (true) {
    std::size_t pivot = 0;
    for (std::size_t j = 1; j < cols.size(); ++j)
      if (norms[j] > norms[pivot]) pivot = j;
    if (norms[pivot] <= threshold) break;
    Vec q = cols[pivot] / norms[pivot];
    for (const Vec& e : basis) q -= e * e.dot(q);  // re-orthogonalize
    q.normalize();
    basis.push_back(q);
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (norms[j] <= threshold) continue;
      cols[j] -= q * q.dot(cols[j]);
      norms[j] = cols[j].norm();
    }
    norms[pivot] = 0.0;
  }
  return basis;
}

void phase_fix(Vec& v) {
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i)
    if (std::abs(v[i]) > std::abs(v[best])) best = i;
  const double mod = std::abs(v[best]);
  if (mod > 0) v *= std::conj(v[best]) / mod;
}

/// Projection of delta_x onto the span of an orthonormal list.
Vec project_delta(const std::vector<Vec>& basis, Eigen::Index x) {
  Vec out = Vec::Zero(basis.front().size());
  for (const Vec& e : basis) out += e * std::conj(e[x]);
  return out;
}

}  // namespace

Complex fourth_root(std::int64_t e) {
  switch (((e % 4) + 4) % 4) {
    case 0: return Complex(1, 0);
    case 1: return Complex(0, 1);
    case 2: return Complex(-1, 0);
    default: return Complex(0, -1);
  }
}

SpectralDecomposition decompose(const PrimeContext& ctx, Torus torus) {
  const std::int64_t p = ctx.p();
  const std::int64_t n = torus.order;

  // The projector family holds #T dense p x p matrices.
  constexpr std::int64_t kMemoryLimit = std::int64_t{2} << 30;
  if (n * p * p * static_cast<std::int64_t>(sizeof(Complex)) > kMemoryLimit)
    throw std::invalid_argument(
        "decompose: p = " + std::to_string(p) +
        " needs more than 2 GiB for the dense character-space decomposition");

  // Powers rho(t)^j of the generator operator, columns built by fast applies.
  const WeilOperator gen_op = rho_fast(ctx, torus.generator);
  std::vector<Mat> power(n);
  power[0] = Mat::Identity(p, p);
  for (std::int64_t j = 1; j < n; ++j) {
    power[j].resize(p, p);
    for (std::int64_t x = 0; x < p; ++x)
      power[j].col(x) = gen_op.apply(ctx, power[j - 1].col(x));
  }

  // All projectors at once: P_k(x, y) = (1/n) sum_j e^{-2 pi i k j / n} R_j(x, y)
  // is a length-n cyclic transform along the power axis, done in place.
  const fft::Plan& plan = fft::Plan::for_length(n);
  std::vector<Complex> seq(n);
  for (std::int64_t x = 0; x < p; ++x) {
    for (std::int64_t y = 0; y < p; ++y) {
      for (std::int64_t j = 0; j < n; ++j) seq[j] = power[j](x, y);
      const std::vector<Complex> out = plan.transform(seq, -1);
      for (std::int64_t k = 0; k < n; ++k) power[k](x, y) = out[k] / static_cast<double>(n);
    }
  }

  SpectralDecomposition dec;
  dec.torus = std::move(torus);
  dec.spaces.resize(n);
  std::int64_t total = 0;
  for (std::int64_t k = 0; k < n; ++k) {
    dec.spaces[k] = orthonormal_image(power[k]);
    const std::int64_t dim = dec.dim(k);
    const bool is_sigma = (k == n / 2);
    const std::int64_t expected =
        is_sigma ? (dec.torus.kind == TorusKind::split ? 2 : 0) : 1;
    if (dim != expected)
      throw std::runtime_error("decompose: dim H_chi(" + std::to_string(k) + ") = " +
                               std::to_string(dim) + ", expected " + std::to_string(expected));
    if (dim > 0) dec.support.push_back(k);
    total += dim;
  }
  if (total != p) throw std::runtime_error("decompose: dimensions do not sum to p");
  return dec;
}

EigenBasis canonical_basis(const PrimeContext& ctx, const SpectralDecomposition& dec) {
  const std::int64_t p = ctx.p();
  EigenBasis basis;
  basis.torus = dec.torus;
  for (const std::int64_t k : dec.support) {
    const auto& space = dec.spaces[k];
    if (space.size() == 1) {
      Vec v = space.front();
      phase_fix(v);
      basis.vectors.push_back(BasisVector{std::move(v), k, std::nullopt});
      continue;
    }
    // 2-dimensional sigma_T plane: deterministic delta seeding.
    std::vector<Vec> picked;
    for (std::int64_t x = 0; x < p && picked.size() < space.size(); ++x) {
      Vec v = project_delta(space, x);
      for (const Vec& e : picked) v -= e * e.dot(v);
      if (v.norm() <= kRankTol) continue;
      v.normalize();
      phase_fix(v);
      picked.push_back(std::move(v));
    }
    if (picked.size() != space.size())
      throw std::runtime_error("canonical_basis: seeding failed to span the sigma_T plane");
    for (Vec& v : picked) basis.vectors.push_back(BasisVector{std::move(v), k, std::nullopt});
  }
  return basis;
}

EigenBasis dft_eigenbasis(const PrimeContext& ctx) {
  const std::int64_t p = ctx.p();
  EigenBasis basis = canonical_basis(ctx, decompose(ctx, torus_fourier(ctx)));
  const std::int64_t n = basis.torus.order;
  const std::int64_t jw = basis.torus.dlog_of(weyl_element(ctx));
  const std::int64_t quarter_step = n / 4;  // w has order 4, so jw k is a multiple of n/4
  const std::int64_t c_pow = ((p - 1) / 2) % 4;
  for (BasisVector& bv : basis.vectors) {
    const std::int64_t q = ((bv.character * jw) % n) / quarter_step;
    bv.dft_eigenvalue = fourth_root(q + c_pow);
  }
  return basis;
}

MultiplicityTables multiplicity_closed_form(std::int64_t p) {
  MultiplicityTables t;
  const std::int64_t k = p / 8;
  switch (p % 8) {
    case 1: t.m = {2 * k + 1, 2 * k, 2 * k, 2 * k}; break;
    case 3: t.m = {2 * k, 2 * k + 1, 2 * k + 1, 2 * k + 1}; break;
    case 5: t.m = {2 * k + 1, 2 * k + 2, 2 * k + 1, 2 * k + 1}; break;
    default: t.m = {2 * k + 2, 2 * k + 1, 2 * k + 2, 2 * k + 2}; break;
  }
  const std::int64_t l = p / 4;
  if (p % 4 == 1)
    t.n = {l + 1, l, l, l};
  else
    t.n = {l + 1, l + 1, l + 1, l};
  return t;
}

MultiplicityTables multiplicities(const PrimeContext& ctx) {
  const std::int64_t p = ctx.p();
  const SpectralDecomposition dec = decompose(ctx, torus_fourier(ctx));
  const std::int64_t n = dec.torus.order;
  const std::int64_t jw = dec.torus.dlog_of(weyl_element(ctx));
  const std::int64_t quarter_step = n / 4;
  const std::int64_t c_pow = ((p - 1) / 2) % 4;

  // Index 0..3 stands for i^0, i^2, i^1, i^3 = +1, -1, +i, -i.
  const auto slot = [](std::int64_t e) -> std::size_t {
    switch (((e % 4) + 4) % 4) {
      case 0: return 0;
      case 2: return 1;
      case 1: return 2;
      default: return 3;
    }
  };

  MultiplicityTables t;
  for (std::int64_t k = 0; k < n; ++k) {
    const std::int64_t dim = dec.dim(k);
    if (dim == 0) continue;
    const std::int64_t q = ((k * jw) % n) / quarter_step;  // chi(w) = i^q
    t.n[slot(q + c_pow)] += dim;                           // mu = C chi(w)
    t.m[slot(q + 2 * c_pow)] += dim;                       // lambda = C mu
  }

  const MultiplicityTables closed = multiplicity_closed_form(p);
  if (t.m != closed.m || t.n != closed.n)
    throw std::runtime_error("multiplicities: computed tables disagree with the closed forms at p = " +
                             std::to_string(p));
  return t;
}

}  // namespace weil
