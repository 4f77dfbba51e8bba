// SL2(F_p): elements, Cayley transform, Bruhat factorization, the maximal
// tori (diagonal, Fourier, non-split) with their characters, and the explicit
// conjugator from the Fourier torus to the diagonal torus.

#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "weil/modp.hpp"
#include "weil/types.hpp"

namespace weil {

/// Row-major 2x2 matrix (a b; c d) over F_p with det = 1.
struct SL2Element {
  std::int64_t a = 1, b = 0, c = 0, d = 1;
  friend bool operator==(const SL2Element&, const SL2Element&) = default;
};

/// Reduces the entries and checks the determinant; throws
/// std::invalid_argument when ad - bc != 1.
SL2Element sl2(const PrimeContext& ctx, std::int64_t a, std::int64_t b, std::int64_t c,
               std::int64_t d);

SL2Element sl2_mul(const PrimeContext& ctx, const SL2Element& g1, const SL2Element& g2);
SL2Element sl2_inv(const PrimeContext& ctx, const SL2Element& g);
SL2Element sl2_pow(const PrimeContext& ctx, const SL2Element& g, std::int64_t e);

/// The Weyl element w = (0 1; -1 0).
SL2Element weyl_element(const PrimeContext& ctx);
/// Diagonal element D_a = (a 0; 0 a^{-1}); a != 0.
SL2Element diagonal_element(const PrimeContext& ctx, std::int64_t a);
/// Lower unipotent U_b = (1 0; b 1).
SL2Element lower_unipotent(const PrimeContext& ctx, std::int64_t b);

/// det(g - I); the Cayley transform is defined iff this is nonzero.
std::int64_t det_minus_id(const PrimeContext& ctx, const SL2Element& g);

/// General 2x2 matrix over F_p (no determinant constraint).
struct Mat2 {
  std::int64_t a = 0, b = 0, c = 0, d = 0;
};

/// Cayley transform (g + I)(g - I)^{-1}; throws std::domain_error when
/// det(g - I) = 0.
Mat2 cayley(const PrimeContext& ctx, const SL2Element& g);

enum class TorusKind { split, nonsplit };

/// A maximal torus: cyclic of order p -/+ 1, listed in generator-power order.
struct Torus {
  const PrimeContext* ctx = nullptr;
  TorusKind kind = TorusKind::split;
  std::int64_t order = 0;
  SL2Element generator;
  std::vector<SL2Element> elements;  // elements[j] = generator^j
  std::unordered_map<std::int64_t, std::int64_t> dlog;

  bool contains(const SL2Element& g) const;
  /// Exponent j with generator^j = g; throws std::domain_error for non-members.
  std::int64_t dlog_of(const SL2Element& g) const;
};

/// The standard diagonal torus A = {D_a}, order p-1, generator D_gen.
Torus torus_diagonal(const PrimeContext& ctx);

/// The centralizer T_w of the Weyl element: {(a b; -b a) : a^2 + b^2 = 1};
/// split of order p-1 when p = 1 (mod 4), non-split of order p+1 otherwise.
Torus torus_fourier(const PrimeContext& ctx);

/// Norm-one subgroup of F_{p^2} embedded via x + y sqrt(D) -> (x yD; y x)
/// with D the smallest non-residue; non-split of order p+1.
Torus torus_nonsplit(const PrimeContext& ctx);

/// Character chi_k of a torus, chi_k(generator^j) = exp(2 pi i k j / #T).
/// A character is a view into its torus; the torus must outlive it.
struct TorusCharacter {
  std::int64_t index = 0;
  const Torus* torus = nullptr;

  Complex at_power(std::int64_t j) const;
  Complex operator()(const SL2Element& g) const;
};

/// All #T characters in index order.
std::vector<TorusCharacter> characters(const Torus& torus);

/// The unique non-trivial character of order 2: index #T / 2.
TorusCharacter sigma_torus(const Torus& torus);

/// Bruhat data: lower variant g = U_{b1} D_a (upper-right entry zero),
/// big cell g = U_{b2} w U_{b1} D_a.
struct BruhatFactorization {
  enum class Variant { lower, big_cell };
  Variant variant = Variant::lower;
  std::int64_t b1 = 0, b2 = 0, a = 1;
};

/// Total decomposition with parameters solved in closed form.
BruhatFactorization bruhat(const PrimeContext& ctx, const SL2Element& g);

SL2Element bruhat_reassemble(const PrimeContext& ctx, const BruhatFactorization& f);

/// s = (1/2, eps/2; eps, 1) with eps^2 = -1, satisfying s T_w s^{-1} = A.
/// Throws std::domain_error when p = 3 (mod 4).
SL2Element conjugator_fourier(const PrimeContext& ctx);

}  // namespace weil
