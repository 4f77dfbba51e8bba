// The finite Heisenberg group H = V x F_p, its standard realization on
// C(F_p), the Weyl transform between operators and kernel functions, and the
// twisted kernel convolution.

#pragma once

#include <cstdint>

#include "weil/modp.hpp"
#include "weil/types.hpp"

namespace weil {

/// Element ((t, w), z) of H with the multiplication
///   (v, z) (v', z') = (v + v', z + z' + (1/2) omega(v, v')).
struct HeisenbergElement {
  std::int64_t t = 0;
  std::int64_t w = 0;
  std::int64_t z = 0;
  friend bool operator==(const HeisenbergElement&, const HeisenbergElement&) = default;
};

/// Standard symplectic form omega((t, w), (t', w')) = t w' - w t'.
std::int64_t omega(const PrimeContext& ctx, std::int64_t t1, std::int64_t w1, std::int64_t t2,
                   std::int64_t w2);

HeisenbergElement h_mul(const PrimeContext& ctx, const HeisenbergElement& h1,
                        const HeisenbergElement& h2);
HeisenbergElement h_inv(const PrimeContext& ctx, const HeisenbergElement& h);

/// Standard realization: pi(t,w,z)[f](x) = psi(z + (1/2) t w + w x) f(x + t).
/// The phase follows from (t,w,z) = (t,0,0)(0,w,0)(0,0,z - (1/2) t w) and the
/// three one-parameter actions; the binding contract is the representation
/// property test.
Vec pi_apply(const PrimeContext& ctx, const HeisenbergElement& h, const Vec& f);

/// Dense p x p matrix of pi(h).
Mat pi_matrix(const PrimeContext& ctx, const HeisenbergElement& h);

/// psi^{-1}-equivariant function on H stored on the z = 0 section:
/// the full function is K(v, z) = psi(-z) K(v, 0). values(t, w) = K((t,w), 0).
struct KernelFunction {
  const PrimeContext* ctx = nullptr;
  Mat values;
};

/// Weyl transform K_A(v) = (1/p) Tr(A pi((v, 0)^{-1})).
KernelFunction weyl_transform(const PrimeContext& ctx, const Mat& op);

/// Extended action pi(K) = sum_v K(v) pi(v, 0); with the (1/p) in the Weyl
/// transform this makes both roundtrips exact.
Mat pi_extended(const PrimeContext& ctx, const KernelFunction& kernel);

/// Twisted convolution on the z = 0 section,
///   (K1 * K2)(x) = sum_u K1(u) K2(x - u) psi((1/2) omega(u, x)),
/// the kernel of the composed operator:
/// pi_extended(K1 * K2) = pi_extended(K1) pi_extended(K2).
KernelFunction kernel_convolve(const PrimeContext& ctx, const KernelFunction& k1,
                               const KernelFunction& k2);

}  // namespace weil
