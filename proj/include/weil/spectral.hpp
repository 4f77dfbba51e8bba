// Character-space decomposition of C(F_p) under a maximal torus, the
// canonical DFT eigenbasis with eigenvalue labels, and the eigenvalue
// multiplicity tables.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "weil/symplectic.hpp"
#include "weil/weil.hpp"

namespace weil {

/// Orthonormal bases of the character spaces H_chi, indexed by character.
/// Dimensions follow the split type: 1 everywhere except sigma_T, which is
/// 2-dimensional (split) or empty (non-split).
struct SpectralDecomposition {
  Torus torus;
  std::vector<std::vector<Vec>> spaces;
  std::vector<std::int64_t> support;  // character indices with dim > 0

  std::int64_t dim(std::int64_t k) const { return static_cast<std::int64_t>(spaces[k].size()); }
};

/// Applies the character projectors P_chi = (1/#T) sum_g conj(chi(g)) rho(g)
/// to the standard basis and extracts an orthonormal basis of each image
/// (pivoted Gram-Schmidt, rank tolerance 1e-8 relative to the largest column
/// norm). Throws std::runtime_error when the dimensions contradict the
/// split-type table.
SpectralDecomposition decompose(const PrimeContext& ctx, Torus torus);

struct BasisVector {
  Vec vector;
  std::int64_t character = 0;
  /// DFT eigenvalue mu = i^{(p-1)/2} chi(w); set for the Fourier torus only.
  std::optional<Complex> dft_eigenvalue;
};

/// Ordered eigenbasis: one unit vector per character in index order, two for
/// sigma_T in the split case. Phases are fixed so the first coordinate of
/// largest modulus is real positive; the sigma_T plane is seeded by
/// projecting delta_0, delta_1, ... deterministically.
struct EigenBasis {
  Torus torus;
  std::vector<BasisVector> vectors;
};

EigenBasis canonical_basis(const PrimeContext& ctx, const SpectralDecomposition& dec);

/// canonical_basis over the Fourier torus with DFT eigenvalue labels.
EigenBasis dft_eigenbasis(const PrimeContext& ctx);

/// Eigenvalue multiplicities over {+1, -1, +i, -i} (in that order): m for
/// rho(w) in the reported table convention, n for the DFT; the two are
/// related by n_mu = m_lambda with lambda = i^{(p-1)/2} mu.
struct MultiplicityTables {
  std::array<std::int64_t, 4> m{};
  std::array<std::int64_t, 4> n{};
};

/// Computes both tables from the decomposition dimensions and validates them
/// against the closed forms; throws std::runtime_error on mismatch.
MultiplicityTables multiplicities(const PrimeContext& ctx);

/// Closed forms by residue of p mod 8 (m) and mod 4 (n).
MultiplicityTables multiplicity_closed_form(std::int64_t p);

/// i^e for the eigenvalue bookkeeping.
Complex fourth_root(std::int64_t e);

}  // namespace weil
