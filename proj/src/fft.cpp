#include "weil/fft.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace weil::fft {

namespace {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_pow2(std::size_t n) {
  std::size_t m = 1;
  while (m < n) m <<= 1;
  return m;
}

void bit_reverse(std::vector<Complex>& a) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
}

}  // namespace

Plan::Plan(std::int64_t n) : n_(n) {
  if (n < 1) throw std::invalid_argument("transform length must be positive");
  if (is_pow2(static_cast<std::size_t>(n))) {
    m_ = static_cast<std::size_t>(n);
  } else {
    m_ = next_pow2(static_cast<std::size_t>(2 * n - 1));
  }

  twiddle_.resize(m_ / 2 + 1);
  for (std::size_t k = 0; k <= m_ / 2; ++k) {
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m_);
    twiddle_[k] = Complex(std::cos(angle), std::sin(angle));
  }

  if (static_cast<std::size_t>(n_) == m_) return;  // radix-2 path only

  // chirp_[j] = exp(i pi j^2 / n); j^2 is reduced mod 2n, the period of the
  // half-angle exponential, to keep the argument small.
  chirp_.resize(n_);
  for (std::int64_t j = 0; j < n_; ++j) {
    const std::int64_t q = (j * j) % (2 * n_);
    const double angle = std::numbers::pi * static_cast<double>(q) / static_cast<double>(n_);
    chirp_[j] = Complex(std::cos(angle), std::sin(angle));
  }

  // Wrapped kernel b[u] = conj(chirp_[|u|]) for u in (-n, n).
  std::vector<Complex> b(m_, Complex(0, 0));
  for (std::int64_t u = 0; u < n_; ++u) {
    b[u] = std::conj(chirp_[u]);
    if (u > 0) b[m_ - u] = std::conj(chirp_[u]);
  }
  pow2_fft(b, -1);
  kernel_fft_ = std::move(b);
}

void Plan::pow2_fft(std::vector<Complex>& a, int sign) const {
  bit_reverse(a);
  const std::size_t m = a.size();
  for (std::size_t len = 2; len <= m; len <<= 1) {
    const std::size_t step = m_ / len;
    for (std::size_t i = 0; i < m; i += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        Complex w = twiddle_[k * step];
        if (sign > 0) w = std::conj(w);
        const Complex u = a[i + k];
        const Complex v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
      }
    }
  }
}

std::vector<Complex> Plan::forward(const std::vector<Complex>& x) const {
  if (static_cast<std::size_t>(n_) == m_) {
    std::vector<Complex> a = x;
    pow2_fft(a, +1);
    return a;
  }
  std::vector<Complex> a(m_, Complex(0, 0));
  for (std::int64_t j = 0; j < n_; ++j) a[j] = x[j] * chirp_[j];
  pow2_fft(a, -1);
  for (std::size_t i = 0; i < m_; ++i) a[i] *= kernel_fft_[i];
  pow2_fft(a, +1);
  const double scale = 1.0 / static_cast<double>(m_);
  std::vector<Complex> out(n_);
  for (std::int64_t k = 0; k < n_; ++k) out[k] = chirp_[k] * a[k] * scale;
  return out;
}

std::vector<Complex> Plan::transform(const std::vector<Complex>& x, int sign) const {
  if (static_cast<std::int64_t>(x.size()) != n_)
    throw std::invalid_argument("transform input length mismatch");
  if (n_ == 1) return x;
  if (sign > 0) return forward(x);
  std::vector<Complex> xc(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) xc[i] = std::conj(x[i]);
  std::vector<Complex> out = forward(xc);
  for (auto& v : out) v = std::conj(v);
  return out;
}

const Plan& Plan::for_length(std::int64_t n) {
  static std::mutex mu;
  static std::map<std::int64_t, std::unique_ptr<Plan>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, std::make_unique<Plan>(n)).first;
  return *it->second;
}

}  // namespace weil::fft
