#include "weil/weil.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

#include "weil/fft.hpp"

namespace weil {

namespace {

std::int64_t pack_key(const PrimeContext& ctx, const SL2Element& g) {
  const std::int64_t p = ctx.p();
  return ((g.a * p + g.b) * p + g.c) * p + g.d;
}

/// Value of the kernel of rho(g) at ((t, w), 0) given the Cayley transform
/// and the scalar prefix.
Complex kernel_value(const PrimeContext& ctx, const Mat2& k, double prefix, std::int64_t quarter,
                     std::int64_t t, std::int64_t w) {
  const std::int64_t kv_t = ctx.add(ctx.mul(k.a, t), ctx.mul(k.b, w));
  const std::int64_t kv_w = ctx.add(ctx.mul(k.c, t), ctx.mul(k.d, w));
  return prefix * ctx.psi(ctx.mul(quarter, omega(ctx, kv_t, kv_w, t, w)));
}

double kernel_prefix(const PrimeContext& ctx, const Mat2& k) {
  const std::int64_t det_k1 =
      ctx.sub(ctx.mul(ctx.add(k.a, 1), ctx.add(k.d, 1)), ctx.mul(k.b, k.c));
  return static_cast<double>(ctx.legendre(ctx.neg(det_k1))) / static_cast<double>(ctx.p());
}

/// (rho(g) delta_0)(x) for non-singular g, one coordinate in O(p). In
/// rho(g) u (x) = sum_t u(x + t) sum_w K(t, w) psi((1/2) t w + w x)
/// only the shift t = -x survives against delta_0.
Complex exact_delta0_coord(const PrimeContext& ctx, const SL2Element& g, std::int64_t x) {
  const Mat2 k = cayley(ctx, g);
  const double prefix = kernel_prefix(ctx, k);
  const std::int64_t quarter = ctx.inv(4);
  const std::int64_t p = ctx.p();
  const std::int64_t t = ctx.neg(x);
  Complex acc(0, 0);
  for (std::int64_t w = 0; w < p; ++w) {
    // psi((1/2) t w + w x) with t = -x collapses to psi((1/2) x w).
    acc += kernel_value(ctx, k, prefix, quarter, t, w) * ctx.psi(ctx.mul(ctx.inv2(), ctx.mul(x, w)));
  }
  return acc;
}

Vec exact_delta0_column(const PrimeContext& ctx, const SL2Element& g);

/// Deterministic split g = g1 r with r from the Fourier torus, both factors
/// off the singular locus.
std::pair<SL2Element, SL2Element> singular_split(const PrimeContext& ctx, const SL2Element& g) {
  const Torus tw = torus_fourier(ctx);
  for (const SL2Element& r : tw.elements) {
    if (det_minus_id(ctx, r) == 0) continue;
    const SL2Element g1 = sl2_mul(ctx, g, sl2_inv(ctx, r));
    if (det_minus_id(ctx, g1) == 0) continue;
    return {g1, r};
  }
  throw std::runtime_error("rho: no non-singular factorization found");
}

Vec exact_apply_kernel(const PrimeContext& ctx, const SL2Element& g, const Vec& u) {
  const Mat2 k = cayley(ctx, g);
  const double prefix = kernel_prefix(ctx, k);
  const std::int64_t quarter = ctx.inv(4);
  const std::int64_t p = ctx.p();
  Vec out = Vec::Zero(p);
  for (std::int64_t x = 0; x < p; ++x) {
    Complex acc(0, 0);
    for (std::int64_t t = 0; t < p; ++t) {
      Complex inner(0, 0);
      for (std::int64_t w = 0; w < p; ++w) {
        inner += kernel_value(ctx, k, prefix, quarter, t, w) *
                 ctx.psi(ctx.add(ctx.mul(ctx.inv2(), ctx.mul(t, w)), ctx.mul(w, x)));
      }
      acc += inner * u[ctx.reduce(x + t)];
    }
    out[x] = acc;
  }
  return out;
}

Vec exact_delta0_column(const PrimeContext& ctx, const SL2Element& g) {
  const std::int64_t p = ctx.p();
  if (det_minus_id(ctx, g) != 0) {
    Vec out(p);
    for (std::int64_t x = 0; x < p; ++x) out[x] = exact_delta0_coord(ctx, g, x);
    return out;
  }
  const auto [g1, r] = singular_split(ctx, g);
  const Vec u = exact_delta0_column(ctx, r);
  return exact_apply_kernel(ctx, g1, u);
}

}  // namespace

Vec primitive_apply(const PrimeContext& ctx, const Primitive& prim, const Vec& f) {
  const std::int64_t p = ctx.p();
  if (f.size() != p) throw std::invalid_argument("primitive_apply: vector length != p");
  return std::visit(
      [&](const auto& op) -> Vec {
        using T = std::decay_t<decltype(op)>;
        if constexpr (std::is_same_v<T, Scaling>) {
          if (ctx.reduce(op.a) == 0) throw std::domain_error("Scaling: a = 0");
          const std::int64_t ai = ctx.inv(op.a);
          const double sgn = ctx.legendre(op.a);
          Vec out(p);
          for (std::int64_t x = 0; x < p; ++x) out[x] = sgn * f[ctx.mul(ai, x)];
          return out;
        } else if constexpr (std::is_same_v<T, Chirp>) {
          Vec out(p);
          const std::int64_t coef = ctx.mul(ctx.neg(op.b), ctx.inv2());
          for (std::int64_t x = 0; x < p; ++x)
            out[x] = ctx.psi(ctx.mul(coef, ctx.mul(x, x))) * f[x];
          return out;
        } else if constexpr (std::is_same_v<T, Fourier>) {
          const auto& plan = fft::Plan::for_length(p);
          std::vector<Complex> in(f.data(), f.data() + p);
          const std::vector<Complex> tr = plan.transform(in, +1);
          const double scale = 1.0 / std::sqrt(static_cast<double>(p));
          Vec out(p);
          for (std::int64_t y = 0; y < p; ++y) out[y] = tr[y] * scale;
          return out;
        } else {
          return op.c * f;
        }
      },
      prim);
}

Vec WeilOperator::apply(const PrimeContext& ctx, const Vec& f) const {
  if (factored) {
    Vec v = f;
    for (const Primitive& prim : *factored) v = primitive_apply(ctx, prim, v);
    return v;
  }
  if (dense) return *dense * f;
  throw std::logic_error("WeilOperator: neither form present");
}

Mat WeilOperator::materialize(const PrimeContext& ctx) const {
  if (dense) return *dense;
  const std::int64_t p = ctx.p();
  Mat out(p, p);
  Vec e = Vec::Zero(p);
  for (std::int64_t x = 0; x < p; ++x) {
    e[x] = Complex(1, 0);
    out.col(x) = apply(ctx, e);
    e[x] = Complex(0, 0);
  }
  return out;
}

KernelFunction rho_kernel(const PrimeContext& ctx, const SL2Element& g) {
  const Mat2 k = cayley(ctx, g);  // throws on the singular locus
  const double prefix = kernel_prefix(ctx, k);
  const std::int64_t quarter = ctx.inv(4);
  const std::int64_t p = ctx.p();
  KernelFunction kernel{&ctx, Mat(p, p)};
  for (std::int64_t t = 0; t < p; ++t)
    for (std::int64_t w = 0; w < p; ++w)
      kernel.values(t, w) = kernel_value(ctx, k, prefix, quarter, t, w);
  return kernel;
}

Mat rho_exact_matrix(const PrimeContext& ctx, const SL2Element& g) {
  if (det_minus_id(ctx, g) != 0) return pi_extended(ctx, rho_kernel(ctx, g));
  const auto [g1, r] = singular_split(ctx, g);
  return rho_exact_matrix(ctx, g1) * rho_exact_matrix(ctx, r);
}

WeilOperator rho_exact(const PrimeContext& ctx, const SL2Element& g) {
  return WeilOperator{g, rho_exact_matrix(ctx, g), std::nullopt};
}

WeilOperator rho_fast(const PrimeContext& ctx, const SL2Element& g) {
  static std::mutex memo_mu;
  static std::map<std::pair<std::int64_t, std::int64_t>, Complex> memo;

  const BruhatFactorization f = bruhat(ctx, g);
  std::vector<Primitive> prims;
  prims.push_back(Scaling{f.a});
  if (f.b1 != 0) prims.push_back(Chirp{f.b1});
  if (f.variant == BruhatFactorization::Variant::big_cell) {
    prims.push_back(Fourier{});
    if (f.b2 != 0) prims.push_back(Chirp{f.b2});
  }

  const auto key = std::make_pair(ctx.p(), pack_key(ctx, g));
  Complex scalar;
  bool have = false;
  {
    std::lock_guard<std::mutex> lock(memo_mu);
    const auto it = memo.find(key);
    if (it != memo.end()) {
      scalar = it->second;
      have = true;
    }
  }
  if (!have) {
    const std::int64_t p = ctx.p();
    Vec v = Vec::Zero(p);
    v[0] = Complex(1, 0);
    for (const Primitive& prim : prims) v = primitive_apply(ctx, prim, v);
    std::int64_t xs = 0;
    for (std::int64_t x = 1; x < p; ++x)
      if (std::abs(v[x]) > std::abs(v[xs])) xs = x;
    Complex exact;
    if (det_minus_id(ctx, g) != 0) {
      exact = exact_delta0_coord(ctx, g, xs);
    } else {
      exact = exact_delta0_column(ctx, g)[xs];
    }
    scalar = exact / v[xs];
    std::lock_guard<std::mutex> lock(memo_mu);
    memo.emplace(key, scalar);
  }
  prims.push_back(Scalar{scalar});
  return WeilOperator{g, std::nullopt, std::move(prims)};
}

double egorov_residual(const PrimeContext& ctx, const SL2Element& g, const HeisenbergElement& h) {
  const Mat rho_g = rho_exact_matrix(ctx, g);
  const Mat rho_ginv = rho_exact_matrix(ctx, sl2_inv(ctx, g));
  const HeisenbergElement gh{ctx.add(ctx.mul(g.a, h.t), ctx.mul(g.b, h.w)),
                             ctx.add(ctx.mul(g.c, h.t), ctx.mul(g.d, h.w)), h.z};
  const Mat lhs = rho_g * pi_matrix(ctx, h) * rho_ginv;
  const Mat rhs = pi_matrix(ctx, gh);
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

}  // namespace weil
