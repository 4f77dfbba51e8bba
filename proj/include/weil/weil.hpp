// The Weil representation of SL2(F_p) on C(F_p): exact operators through the
// invariant kernel formula (with a product fallback on the singular locus of
// the Cayley transform), and O(p log p) factored operators built from the
// Bruhat decomposition.

#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "weil/heisenberg.hpp"
#include "weil/symplectic.hpp"

namespace weil {

/// Fast primitives on C(F_p).
struct Scaling {
  std::int64_t a;  ///< f(x) -> sigma(a) f(a^{-1} x); a != 0
};
struct Chirp {
  std::int64_t b;  ///< f(x) -> psi(-(b/2) x^2) f(x)
};
struct Fourier {};  ///< unitary DFT F[f](y) = (1/sqrt p) sum_x psi(y x) f(x)
struct Scalar {
  Complex c;
};
using Primitive = std::variant<Scaling, Chirp, Fourier, Scalar>;

Vec primitive_apply(const PrimeContext& ctx, const Primitive& prim, const Vec& f);

/// A unitary operator rho(g), held as a dense matrix and/or a sequence of
/// fast primitives in application order. When both forms are present they
/// agree entrywise to 1e-9.
struct WeilOperator {
  SL2Element element;
  std::optional<Mat> dense;
  std::optional<std::vector<Primitive>> factored;

  Vec apply(const PrimeContext& ctx, const Vec& f) const;
  Mat materialize(const PrimeContext& ctx) const;
};

/// z = 0 section of the kernel of rho(g),
///   K_g(v) = (1/p) sigma(-det(kappa(g) + I)) psi((1/4) omega(kappa(g) v, v)).
/// Throws std::domain_error when g - I is singular.
KernelFunction rho_kernel(const PrimeContext& ctx, const SL2Element& g);

/// Dense rho(g): pi_extended(rho_kernel(g)) when g - I is invertible,
/// otherwise rho(g r^{-1}) rho(r) for the first r in the Fourier torus
/// (power order) making both factors non-singular.
Mat rho_exact_matrix(const PrimeContext& ctx, const SL2Element& g);
WeilOperator rho_exact(const PrimeContext& ctx, const SL2Element& g);

/// Factored rho(g) from bruhat(g): Scaling, then Chirp(b1) (when nonzero),
/// then Fourier for the big cell, then Chirp(b2) (when nonzero), then a
/// Scalar resolved against rho_exact on one coordinate of the delta_0 image
/// so that the factored operator equals the linear-representation operator.
/// Resolved scalars are memoized per (p, g).
WeilOperator rho_fast(const PrimeContext& ctx, const SL2Element& g);

/// Max-entry norm of rho(g) pi(h) rho(g^{-1}) - pi((g t, g w), z).
double egorov_residual(const PrimeContext& ctx, const SL2Element& g, const HeisenbergElement& h);

}  // namespace weil
