#include "weil/oscillator.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "weil/fft.hpp"

namespace weil {

namespace {

// Per-prime fast-transform layout: the exponent j0 of the diagonal entry of
// s t s^{-1}, where t generates the Fourier torus. gcd(j0, p-1) = 1, so the
// relabeling k -> k j0 permutes the characters.
struct FotLayout {
  std::int64_t j0 = 0;
};

const FotLayout& fot_layout(const PrimeContext& ctx) {
  static std::mutex mu;
  static std::map<std::int64_t, FotLayout> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(ctx.p());
  if (it == cache.end()) {
    const Torus tw = torus_fourier(ctx);
    const SL2Element s = conjugator_fourier(ctx);
    const SL2Element d = sl2_mul(ctx, sl2_mul(ctx, s, tw.generator), sl2_inv(ctx, s));
    if (d.b != 0 || d.c != 0)
      throw std::runtime_error("fot: s does not conjugate the Fourier torus to the diagonal");
    it = cache.emplace(ctx.p(), FotLayout{ctx.dlog(d.a)}).first;
  }
  return it->second;
}

}  // namespace

Vec prime_dft(const PrimeContext& ctx, const Vec& f, DftDirection dir) {
  const std::int64_t p = ctx.p();
  if (f.size() != p) throw std::invalid_argument("prime_dft: vector length != p");
  const auto& plan = fft::Plan::for_length(p);
  std::vector<Complex> in(f.data(), f.data() + p);
  const std::vector<Complex> tr = plan.transform(in, dir == DftDirection::forward ? +1 : -1);
  const double scale = 1.0 / std::sqrt(static_cast<double>(p));
  Vec out(p);
  for (std::int64_t y = 0; y < p; ++y) out[y] = tr[y] * scale;
  return out;
}

DotCoefficients dot_naive(const PrimeContext& ctx, const EigenBasis& basis, const Vec& f) {
  if (f.size() != ctx.p()) throw std::invalid_argument("dot_naive: vector length != p");
  DotCoefficients out;
  out.p = ctx.p();
  out.kind = basis.torus.kind;
  out.torus_order = basis.torus.order;
  out.testvector = TestVector::canonical;
  for (const BasisVector& bv : basis.vectors) {
    if (out.values.count(bv.character)) continue;  // sigma_T: first vector only
    out.values.emplace(bv.character, bv.vector.dot(f));
  }
  return out;
}

Vec reconstruct(const PrimeContext& ctx, const EigenBasis& basis, const DotCoefficients& coeffs) {
  if (coeffs.testvector != TestVector::canonical)
    throw std::invalid_argument("reconstruct: coefficients are not in the canonical family");
  if (coeffs.p != ctx.p() || coeffs.torus_order != basis.torus.order ||
      coeffs.kind != basis.torus.kind)
    throw std::invalid_argument("reconstruct: coefficient set does not match the basis");
  Vec out = Vec::Zero(ctx.p());
  std::size_t used = 0;
  std::int64_t last = -1;
  for (const BasisVector& bv : basis.vectors) {
    if (bv.character == last) continue;
    last = bv.character;
    const auto it = coeffs.values.find(bv.character);
    if (it == coeffs.values.end())
      throw std::invalid_argument("reconstruct: missing coefficient for character " +
                                  std::to_string(bv.character));
    out += it->second * bv.vector;
    ++used;
  }
  if (used != coeffs.values.size())
    throw std::invalid_argument("reconstruct: coefficient labels do not match the basis");
  return out;
}

std::vector<Complex> mellin(const PrimeContext& ctx, const Torus& torus,
                            const std::vector<Complex>& h, bool fast) {
  if (torus.ctx->p() != ctx.p()) throw std::invalid_argument("mellin: torus/context mismatch");
  const std::int64_t n = torus.order;
  if (static_cast<std::int64_t>(h.size()) != n)
    throw std::invalid_argument("mellin: input length != #T");
  const double scale = 1.0 / static_cast<double>(n);
  if (fast) {
    const auto& plan = fft::Plan::for_length(n);
    std::vector<Complex> out = plan.transform(h, -1);
    for (auto& v : out) v *= scale;
    return out;
  }
  std::vector<Complex> out(n);
  const double step = -2.0 * std::numbers::pi / static_cast<double>(n);
  for (std::int64_t k = 0; k < n; ++k) {
    Complex acc(0, 0);
    for (std::int64_t j = 0; j < n; ++j) {
      const double angle = step * static_cast<double>((k * j) % n);
      acc += Complex(std::cos(angle), std::sin(angle)) * h[j];
    }
    out[k] = acc * scale;
  }
  return out;
}

std::vector<Complex> matrix_coefficient(const PrimeContext& ctx, const Torus& torus,
                                        const Vec& phi, const Vec& f) {
  if (phi.size() != ctx.p() || f.size() != ctx.p())
    throw std::invalid_argument("matrix_coefficient: vector length != p");
  const WeilOperator step = rho_fast(ctx, sl2_inv(ctx, torus.generator));
  std::vector<Complex> out(torus.order);
  Vec u = phi;  // rho(g^{-j}) phi, advanced one generator step per entry
  for (std::int64_t j = 0; j < torus.order; ++j) {
    out[j] = u.dot(f);
    if (j + 1 < torus.order) u = step.apply(ctx, u);
  }
  return out;
}

DotCoefficients dot_integral(const PrimeContext& ctx, const Torus& torus, const Vec& phi,
                             const Vec& f, bool fast_mellin) {
  const std::vector<Complex> m = matrix_coefficient(ctx, torus, phi, f);
  const std::vector<Complex> coef = mellin(ctx, torus, m, fast_mellin);
  DotCoefficients out;
  out.p = ctx.p();
  out.kind = torus.kind;
  out.torus_order = torus.order;
  out.testvector = TestVector::rho_s_delta1;
  for (std::int64_t k = 0; k < torus.order; ++k) {
    if (torus.kind == TorusKind::nonsplit && k == torus.order / 2) continue;  // empty space
    out.values.emplace(k, coef[k]);
  }
  return out;
}

Vec fot_test_vector(const PrimeContext& ctx) {
  const SL2Element s = conjugator_fourier(ctx);
  const WeilOperator op = rho_fast(ctx, sl2_inv(ctx, s));
  Vec delta1 = Vec::Zero(ctx.p());
  delta1[1] = Complex(1, 0);
  return op.apply(ctx, delta1);
}

DotCoefficients fot(const PrimeContext& ctx, const Vec& f, bool naive_mellin) {
  const std::int64_t p = ctx.p();
  if (p % 4 != 1)
    throw std::domain_error(
        "fot: unsupported for p = 3 (mod 4); no fast algorithm is known for the "
        "non-split torus (open problem) -- use the naive transform instead");
  if (f.size() != p) throw std::invalid_argument("fot: vector length != p");

  const FotLayout& layout = fot_layout(ctx);
  const std::int64_t n = p - 1;

  const WeilOperator s_op = rho_fast(ctx, conjugator_fourier(ctx));
  const Vec g = s_op.apply(ctx, f);

  // h(a) = sigma(a) g(a^{-1}) indexed by a = gen^j; gen is a non-residue, so
  // sigma(gen^j) = (-1)^j, and gen^{-j} = gen^{n-j}.
  std::vector<Complex> h(n);
  for (std::int64_t j = 0; j < n; ++j) {
    const std::int64_t ainv = ctx.gen_pow(j == 0 ? 0 : n - j);
    h[j] = (j % 2 == 0 ? 1.0 : -1.0) * g[ainv];
  }

  // Diagonal-torus Mellin, then relabel chi_k -> chi_{k j0} into Fourier-torus
  // indexing.
  std::vector<Complex> coef;
  const double scale = 1.0 / static_cast<double>(n);
  if (naive_mellin) {
    coef.resize(n);
    const double step = -2.0 * std::numbers::pi / static_cast<double>(n);
    for (std::int64_t k = 0; k < n; ++k) {
      Complex acc(0, 0);
      for (std::int64_t j = 0; j < n; ++j) {
        const double angle = step * static_cast<double>((k * j) % n);
        acc += Complex(std::cos(angle), std::sin(angle)) * h[j];
      }
      coef[k] = acc * scale;
    }
  } else {
    const auto& plan = fft::Plan::for_length(n);
    coef = plan.transform(h, -1);
    for (auto& v : coef) v *= scale;
  }

  DotCoefficients out;
  out.p = p;
  out.kind = TorusKind::split;
  out.torus_order = n;
  out.testvector = TestVector::rho_s_delta1;
  for (std::int64_t k = 0; k < n; ++k) out.values.emplace((k * layout.j0) % n, coef[k]);
  return out;
}

}  // namespace weil
