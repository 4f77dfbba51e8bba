// The discrete oscillator transform: naive inner products against the
// canonical basis, the integral form (Mellin of matrix coefficients), and the
// O(p log p) fast path for the split Fourier torus; plus the prime-length
// fast DFT and reconstruction.

#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "weil/spectral.hpp"

namespace weil {

enum class DftDirection { forward, inverse };

/// Unitary DFT of prime length p, F[f](y) = (1/sqrt p) sum_x psi(y x) f(x),
/// computed in O(p log p) through the chirp reduction. The inverse is the
/// adjoint (conjugate kernel).
Vec prime_dft(const PrimeContext& ctx, const Vec& f, DftDirection dir = DftDirection::forward);

/// Which test-vector family a coefficient set refers to.
enum class TestVector { canonical, rho_s_delta1 };

/// Oscillator-transform coefficients, keyed by character index and defined
/// exactly on the spectral support.
struct DotCoefficients {
  std::int64_t p = 0;
  TorusKind kind = TorusKind::split;
  std::int64_t torus_order = 0;
  TestVector testvector = TestVector::canonical;
  std::map<std::int64_t, Complex> values;
};

/// Theta[f](chi) = <f, phi_chi> per character, using the first basis vector
/// of each character (the sigma_T plane contributes one coefficient). O(p^2).
DotCoefficients dot_naive(const PrimeContext& ctx, const EigenBasis& basis, const Vec& f);

/// f = sum_chi a_chi phi_chi over the basis labels; requires canonical-family
/// coefficients whose character set matches the basis support.
Vec reconstruct(const PrimeContext& ctx, const EigenBasis& basis, const DotCoefficients& coeffs);

/// Finite Mellin transform, h indexed in generator-power order:
/// M[h](chi_k) = (1/#T) sum_j conj(chi_k)(g^j) h[j]. The fast path runs one
/// cyclic FFT of length #T; both paths agree to 1e-10.
std::vector<Complex> mellin(const PrimeContext& ctx, const Torus& torus,
                            const std::vector<Complex>& h, bool fast);

/// Matrix-coefficient function m[f](g^j) = <f, rho(g^{-j}) phi>, indexed in
/// generator-power order.
std::vector<Complex> matrix_coefficient(const PrimeContext& ctx, const Torus& torus,
                                        const Vec& phi, const Vec& f);

/// Oscillator transform with an explicit test vector phi: the Mellin of the
/// matrix-coefficient function. This is the definition-level route and the
/// independent reference for fot(). Coefficients are restricted to the
/// spectral support.
DotCoefficients dot_integral(const PrimeContext& ctx, const Torus& torus, const Vec& phi,
                             const Vec& f, bool fast_mellin = false);

/// The fast-transform test vector rho(s)^{-1} delta_1; p = 1 (mod 4).
Vec fot_test_vector(const PrimeContext& ctx);

/// Fast oscillator transform for the Fourier torus with phi =
/// rho(s)^{-1} delta_1, O(p log p): factored rho(s), the sigma-weighted
/// restriction h(a) = sigma(a) (rho(s) f)(a^{-1}) in generator order, a fast
/// Mellin of length p-1, and the character relabeling through conjugation by
/// s. naive_mellin = true replaces the final stage with the O(p^2) character
/// sums (the benchmark baseline). Throws std::domain_error for p = 3 (mod 4),
/// where no fast algorithm is known.
DotCoefficients fot(const PrimeContext& ctx, const Vec& f, bool naive_mellin = false);

}  // namespace weil
