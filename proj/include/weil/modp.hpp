// Prime-field context: modular arithmetic, quadratic character, square roots,
// multiplicative generator and discrete logarithms.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "weil/types.hpp"

namespace weil {

/// Number-theoretic tables for a fixed odd prime p >= 5.
///
/// All field elements are represented canonically in [0, p) and every
/// operation reduces eagerly. Immutable after construction; safe for
/// unrestricted concurrent reads.
class PrimeContext {
public:
  /// Builds all tables. Throws std::invalid_argument unless p is an odd
  /// prime >= 5.
  static PrimeContext make(std::int64_t p);

  std::int64_t p() const { return p_; }

  /// Canonical representative of x in [0, p).
  std::int64_t reduce(std::int64_t x) const {
    std::int64_t r = x % p_;
    return r < 0 ? r + p_ : r;
  }

  std::int64_t add(std::int64_t a, std::int64_t b) const { return reduce(reduce(a) + reduce(b)); }
  std::int64_t sub(std::int64_t a, std::int64_t b) const { return reduce(reduce(a) - reduce(b)); }
  std::int64_t mul(std::int64_t a, std::int64_t b) const { return reduce(reduce(a) * reduce(b)); }
  std::int64_t neg(std::int64_t a) const { return reduce(-a); }

  /// a^e mod p for e >= 0.
  std::int64_t pow(std::int64_t a, std::int64_t e) const;

  /// Multiplicative inverse; throws std::domain_error for a = 0 (mod p).
  std::int64_t inv(std::int64_t a) const;

  /// Inverse of 2.
  std::int64_t inv2() const { return inv2_; }

  /// Legendre character sigma(a) in {-1, 0, +1}.
  int legendre(std::int64_t a) const { return legendre_[reduce(a)]; }

  /// Smallest multiplicative generator of F_p^x.
  std::int64_t generator() const { return gen_; }

  /// Exponent j in [0, p-1) with generator()^j = a; throws std::domain_error
  /// for a = 0 (mod p).
  std::int64_t dlog(std::int64_t a) const;

  /// generator()^j for j in [0, p-1); any integer j is reduced mod p-1.
  std::int64_t gen_pow(std::int64_t j) const;

  /// Square root of -1, present iff p = 1 (mod 4); the smaller of the two.
  std::optional<std::int64_t> sqrt_minus_one() const;

  /// Smaller square root of a quadratic residue; nullopt for non-residues.
  std::optional<std::int64_t> sqrt(std::int64_t a) const;

  /// Central character value psi(z) = exp(2 pi i z / p).
  Complex psi(std::int64_t z) const { return psi_[reduce(z)]; }

private:
  PrimeContext() = default;

  std::int64_t p_ = 0;
  std::int64_t gen_ = 0;
  std::int64_t inv2_ = 0;
  std::int64_t eps_ = 0;  // 0 when p = 3 (mod 4)
  std::vector<std::int8_t> legendre_;
  std::vector<std::int64_t> dlog_;
  std::vector<std::int64_t> exp_;   // exp_[j] = gen^j
  std::vector<std::int64_t> sqrt_;  // smaller root, or -1
  std::vector<Complex> psi_;
};

}  // namespace weil
