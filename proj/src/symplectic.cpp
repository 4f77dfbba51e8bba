#include "weil/symplectic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace weil {

namespace {

std::int64_t pack(const PrimeContext& ctx, const SL2Element& g) {
  const std::int64_t p = ctx.p();
  return ((g.a * p + g.b) * p + g.c) * p + g.d;
}

std::vector<std::int64_t> prime_factors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

bool tuple_less(const SL2Element& x, const SL2Element& y) {
  if (x.a != y.a) return x.a < y.a;
  if (x.b != y.b) return x.b < y.b;
  if (x.c != y.c) return x.c < y.c;
  return x.d < y.d;
}

/// Orders sorted candidates, picks the first of exact order n, and lists the
/// powers. Candidate order check uses the prime divisors of n; element orders
/// divide n by Lagrange.
Torus assemble_torus(const PrimeContext& ctx, TorusKind kind,
                     std::vector<SL2Element> candidates) {
  const auto n = static_cast<std::int64_t>(candidates.size());
  std::sort(candidates.begin(), candidates.end(), tuple_less);

  const SL2Element id{};
  const auto factors = prime_factors(n);
  SL2Element generator;
  bool found = false;
  for (const auto& cand : candidates) {
    bool full_order = true;
    for (const std::int64_t q : factors) {
      if (sl2_pow(ctx, cand, n / q) == id) {
        full_order = false;
        break;
      }
    }
    if (full_order) {
      generator = cand;
      found = true;
      break;
    }
  }
  if (!found) throw std::runtime_error("torus: no generator found");

  Torus torus;
  torus.ctx = &ctx;
  torus.kind = kind;
  torus.order = n;
  torus.generator = generator;
  torus.elements.reserve(n);
  SL2Element x = id;
  for (std::int64_t j = 0; j < n; ++j) {
    torus.elements.push_back(x);
    torus.dlog.emplace(pack(ctx, x), j);
    x = sl2_mul(ctx, x, generator);
  }
  if (x != id || static_cast<std::int64_t>(torus.dlog.size()) != n)
    throw std::runtime_error("torus: generator powers do not enumerate the group");
  return torus;
}

}  // namespace

SL2Element sl2(const PrimeContext& ctx, std::int64_t a, std::int64_t b, std::int64_t c,
               std::int64_t d) {
  SL2Element g{ctx.reduce(a), ctx.reduce(b), ctx.reduce(c), ctx.reduce(d)};
  if (ctx.sub(ctx.mul(g.a, g.d), ctx.mul(g.b, g.c)) != 1)
    throw std::invalid_argument("sl2: determinant != 1");
  return g;
}

SL2Element sl2_mul(const PrimeContext& ctx, const SL2Element& g1, const SL2Element& g2) {
  return SL2Element{ctx.add(ctx.mul(g1.a, g2.a), ctx.mul(g1.b, g2.c)),
                    ctx.add(ctx.mul(g1.a, g2.b), ctx.mul(g1.b, g2.d)),
                    ctx.add(ctx.mul(g1.c, g2.a), ctx.mul(g1.d, g2.c)),
                    ctx.add(ctx.mul(g1.c, g2.b), ctx.mul(g1.d, g2.d))};
}

SL2Element sl2_inv(const PrimeContext& ctx, const SL2Element& g) {
  return SL2Element{g.d, ctx.neg(g.b), ctx.neg(g.c), g.a};
}

SL2Element sl2_pow(const PrimeContext& ctx, const SL2Element& g, std::int64_t e) {
  SL2Element base = e < 0 ? sl2_inv(ctx, g) : g;
  std::int64_t k = e < 0 ? -e : e;
  SL2Element r{};
  while (k > 0) {
    if (k & 1) r = sl2_mul(ctx, r, base);
    base = sl2_mul(ctx, base, base);
    k >>= 1;
  }
  return r;
}

SL2Element weyl_element(const PrimeContext& ctx) { return SL2Element{0, 1, ctx.neg(1), 0}; }

SL2Element diagonal_element(const PrimeContext& ctx, std::int64_t a) {
  return SL2Element{ctx.reduce(a), 0, 0, ctx.inv(a)};
}

SL2Element lower_unipotent(const PrimeContext& ctx, std::int64_t b) {
  return SL2Element{1, 0, ctx.reduce(b), 1};
}

std::int64_t det_minus_id(const PrimeContext& ctx, const SL2Element& g) {
  return ctx.sub(ctx.mul(ctx.sub(g.a, 1), ctx.sub(g.d, 1)), ctx.mul(g.b, g.c));
}

Mat2 cayley(const PrimeContext& ctx, const SL2Element& g) {
  const std::int64_t det = det_minus_id(ctx, g);
  if (det == 0) throw std::domain_error("cayley: g - I is singular");
  const std::int64_t di = ctx.inv(det);
  // (g - I)^{-1}
  const std::int64_t ia = ctx.mul(ctx.sub(g.d, 1), di);
  const std::int64_t ib = ctx.mul(ctx.neg(g.b), di);
  const std::int64_t ic = ctx.mul(ctx.neg(g.c), di);
  const std::int64_t id = ctx.mul(ctx.sub(g.a, 1), di);
  // (g + I)(g - I)^{-1}
  const std::int64_t na = ctx.add(g.a, 1);
  const std::int64_t nd = ctx.add(g.d, 1);
  return Mat2{ctx.add(ctx.mul(na, ia), ctx.mul(g.b, ic)), ctx.add(ctx.mul(na, ib), ctx.mul(g.b, id)),
              ctx.add(ctx.mul(g.c, ia), ctx.mul(nd, ic)), ctx.add(ctx.mul(g.c, ib), ctx.mul(nd, id))};
}

bool Torus::contains(const SL2Element& g) const { return dlog.count(pack(*ctx, g)) != 0; }

std::int64_t Torus::dlog_of(const SL2Element& g) const {
  const auto it = dlog.find(pack(*ctx, g));
  if (it == dlog.end()) throw std::domain_error("torus dlog: element is not a member");
  return it->second;
}

Torus torus_diagonal(const PrimeContext& ctx) {
  const std::int64_t p = ctx.p();
  Torus torus;
  torus.ctx = &ctx;
  torus.kind = TorusKind::split;
  torus.order = p - 1;
  torus.generator = diagonal_element(ctx, ctx.generator());
  torus.elements.reserve(p - 1);
  for (std::int64_t j = 0; j < p - 1; ++j) {
    const SL2Element g = diagonal_element(ctx, ctx.gen_pow(j));
    torus.elements.push_back(g);
    torus.dlog.emplace(pack(ctx, g), j);
  }
  return torus;
}

Torus torus_fourier(const PrimeContext& ctx) {
  const std::int64_t p = ctx.p();
  std::vector<SL2Element> els;
  for (std::int64_t a = 0; a < p; ++a) {
    const std::int64_t r = ctx.sub(1, ctx.mul(a, a));
    if (r == 0) {
      els.push_back(SL2Element{a, 0, 0, a});
    } else if (ctx.legendre(r) == 1) {
      const std::int64_t b = *ctx.sqrt(r);
      els.push_back(SL2Element{a, b, ctx.neg(b), a});
      els.push_back(SL2Element{a, ctx.neg(b), b, a});
    }
  }
  const TorusKind kind = (p % 4 == 1) ? TorusKind::split : TorusKind::nonsplit;
  const std::int64_t expected = (p % 4 == 1) ? p - 1 : p + 1;
  if (static_cast<std::int64_t>(els.size()) != expected)
    throw std::runtime_error("torus_fourier: wrong element count");
  return assemble_torus(ctx, kind, std::move(els));
}

Torus torus_nonsplit(const PrimeContext& ctx) {
  const std::int64_t p = ctx.p();
  std::int64_t delta = 0;
  for (std::int64_t x = 2; x < p; ++x) {
    if (ctx.legendre(x) == -1) {
      delta = x;
      break;
    }
  }
  std::vector<SL2Element> els;
  const std::int64_t dinv = ctx.inv(delta);
  for (std::int64_t x = 0; x < p; ++x) {
    const std::int64_t ysq = ctx.mul(ctx.sub(ctx.mul(x, x), 1), dinv);
    if (ysq == 0) {
      els.push_back(SL2Element{x, 0, 0, x});
    } else if (ctx.legendre(ysq) == 1) {
      const std::int64_t y = *ctx.sqrt(ysq);
      els.push_back(SL2Element{x, ctx.mul(y, delta), y, x});
      els.push_back(SL2Element{x, ctx.mul(ctx.neg(y), delta), ctx.neg(y), x});
    }
  }
  if (static_cast<std::int64_t>(els.size()) != p + 1)
    throw std::runtime_error("torus_nonsplit: wrong element count");
  return assemble_torus(ctx, TorusKind::nonsplit, std::move(els));
}

Complex TorusCharacter::at_power(std::int64_t j) const {
  const std::int64_t n = torus->order;
  std::int64_t r = (index * (j % n)) % n;
  if (r < 0) r += n;
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(n);
  return Complex(std::cos(angle), std::sin(angle));
}

Complex TorusCharacter::operator()(const SL2Element& g) const {
  return at_power(torus->dlog_of(g));
}

std::vector<TorusCharacter> characters(const Torus& torus) {
  std::vector<TorusCharacter> out;
  out.reserve(torus.order);
  for (std::int64_t k = 0; k < torus.order; ++k) out.push_back(TorusCharacter{k, &torus});
  return out;
}

TorusCharacter sigma_torus(const Torus& torus) { return TorusCharacter{torus.order / 2, &torus}; }

BruhatFactorization bruhat(const PrimeContext& ctx, const SL2Element& g) {
  BruhatFactorization f;
  if (g.b == 0) {
    f.variant = BruhatFactorization::Variant::lower;
    f.a = g.a;
    f.b1 = ctx.mul(g.c, g.d);  // c / a, and a^{-1} = d when b = 0
  } else {
    f.variant = BruhatFactorization::Variant::big_cell;
    f.a = ctx.inv(g.b);
    f.b1 = ctx.mul(g.a, g.b);
    f.b2 = ctx.mul(g.d, f.a);
  }
  return f;
}

SL2Element bruhat_reassemble(const PrimeContext& ctx, const BruhatFactorization& f) {
  SL2Element g = sl2_mul(ctx, lower_unipotent(ctx, f.b1), diagonal_element(ctx, f.a));
  if (f.variant == BruhatFactorization::Variant::big_cell) {
    g = sl2_mul(ctx, weyl_element(ctx), g);
    g = sl2_mul(ctx, lower_unipotent(ctx, f.b2), g);
  }
  return g;
}

SL2Element conjugator_fourier(const PrimeContext& ctx) {
  const auto eps = ctx.sqrt_minus_one();
  if (!eps) throw std::domain_error("conjugator_fourier: requires p = 1 (mod 4)");
  const std::int64_t half = ctx.inv2();
  return sl2(ctx, half, ctx.mul(*eps, half), *eps, 1);
}

}  // namespace weil
