// Cyclic DFT of arbitrary length: power-of-two lengths run a radix-2
// transform directly, everything else goes through Bluestein's chirp
// reduction to a power-of-two convolution.

#pragma once

#include <cstdint>
#include <vector>

#include "weil/types.hpp"

namespace weil::fft {

/// Unnormalized cyclic DFT of fixed length n:
///   out[k] = sum_j x[j] exp(sign * 2 pi i j k / n),   sign in {+1, -1}.
///
/// A plan precomputes the chirp and convolution-kernel tables for its length.
/// Plans are immutable after construction and safe to share across threads.
class Plan {
public:
  explicit Plan(std::int64_t n);

  std::int64_t length() const { return n_; }

  std::vector<Complex> transform(const std::vector<Complex>& x, int sign) const;

  /// Process-wide registry; plans are built once per length and reused.
  static const Plan& for_length(std::int64_t n);

private:
  void pow2_fft(std::vector<Complex>& a, int sign) const;
  std::vector<Complex> forward(const std::vector<Complex>& x) const;  // sign = +1

  std::int64_t n_ = 0;
  std::size_t m_ = 0;                // power-of-two work size
  std::vector<Complex> twiddle_;     // exp(-2 pi i k / m), k < m/2
  std::vector<Complex> chirp_;       // exp(+i pi j^2 / n), j < n
  std::vector<Complex> kernel_fft_;  // FFT of the wrapped conjugate chirp
};

}  // namespace weil::fft
