#include "weil/modp.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace weil {

namespace {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

PrimeContext PrimeContext::make(std::int64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("p = " + std::to_string(p) + " is not prime");
  if (p < 5) throw std::invalid_argument("p must be an odd prime >= 5, got " + std::to_string(p));

  PrimeContext ctx;
  ctx.p_ = p;
  ctx.inv2_ = (p + 1) / 2;

  // Legendre table from the set of nonzero squares.
  ctx.legendre_.assign(p, -1);
  ctx.legendre_[0] = 0;
  ctx.sqrt_.assign(p, -1);
  ctx.sqrt_[0] = 0;
  for (std::int64_t x = 1; x < p; ++x) {
    const std::int64_t sq = x * x % p;
    ctx.legendre_[sq] = 1;
    if (ctx.sqrt_[sq] < 0 || x < ctx.sqrt_[sq]) ctx.sqrt_[sq] = x;
  }

  // Smallest generator, by exhaustive order check.
  for (std::int64_t g = 2; g < p; ++g) {
    std::int64_t x = g;
    std::int64_t order = 1;
    while (x != 1) {
      x = x * g % p;
      ++order;
    }
    if (order == p - 1) {
      ctx.gen_ = g;
      break;
    }
  }

  ctx.dlog_.assign(p, 0);
  ctx.exp_.assign(p - 1, 0);
  {
    std::int64_t x = 1;
    for (std::int64_t j = 0; j < p - 1; ++j) {
      ctx.exp_[j] = x;
      ctx.dlog_[x] = j;
      x = x * ctx.gen_ % p;
    }
  }

  if (p % 4 == 1) {
    const std::int64_t r = ctx.pow(ctx.gen_, (p - 1) / 4);
    ctx.eps_ = std::min(r, p - r);
  }

  ctx.psi_.resize(p);
  for (std::int64_t z = 0; z < p; ++z) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(z) / static_cast<double>(p);
    ctx.psi_[z] = Complex(std::cos(angle), std::sin(angle));
  }

  return ctx;
}

std::int64_t PrimeContext::pow(std::int64_t a, std::int64_t e) const {
  a = reduce(a);
  std::int64_t r = 1;
  while (e > 0) {
    if (e & 1) r = r * a % p_;
    a = a * a % p_;
    e >>= 1;
  }
  return r;
}

std::int64_t PrimeContext::inv(std::int64_t a) const {
  a = reduce(a);
  if (a == 0) throw std::domain_error("inverse of 0 mod p");
  return pow(a, p_ - 2);
}

std::int64_t PrimeContext::dlog(std::int64_t a) const {
  a = reduce(a);
  if (a == 0) throw std::domain_error("dlog of 0 mod p");
  return dlog_[a];
}

std::int64_t PrimeContext::gen_pow(std::int64_t j) const {
  const std::int64_t n = p_ - 1;
  std::int64_t r = j % n;
  if (r < 0) r += n;
  return exp_[r];
}

std::optional<std::int64_t> PrimeContext::sqrt_minus_one() const {
  if (eps_ == 0) return std::nullopt;
  return eps_;
}

std::optional<std::int64_t> PrimeContext::sqrt(std::int64_t a) const {
  const std::int64_t r = sqrt_[reduce(a)];
  if (r < 0) return std::nullopt;
  return r;
}

}  // namespace weil
