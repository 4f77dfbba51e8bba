#include "weil/heisenberg.hpp"

#include <stdexcept>

namespace weil {

std::int64_t omega(const PrimeContext& ctx, std::int64_t t1, std::int64_t w1, std::int64_t t2,
                   std::int64_t w2) {
  return ctx.sub(ctx.mul(t1, w2), ctx.mul(w1, t2));
}

HeisenbergElement h_mul(const PrimeContext& ctx, const HeisenbergElement& h1,
                        const HeisenbergElement& h2) {
  HeisenbergElement out;
  out.t = ctx.add(h1.t, h2.t);
  out.w = ctx.add(h1.w, h2.w);
  out.z = ctx.add(ctx.add(h1.z, h2.z), ctx.mul(ctx.inv2(), omega(ctx, h1.t, h1.w, h2.t, h2.w)));
  return out;
}

HeisenbergElement h_inv(const PrimeContext& ctx, const HeisenbergElement& h) {
  return {ctx.neg(h.t), ctx.neg(h.w), ctx.neg(h.z)};
}

Vec pi_apply(const PrimeContext& ctx, const HeisenbergElement& h, const Vec& f) {
  const std::int64_t p = ctx.p();
  if (f.size() != p) throw std::invalid_argument("pi_apply: vector length != p");
  const std::int64_t base = ctx.add(h.z, ctx.mul(ctx.inv2(), ctx.mul(h.t, h.w)));
  Vec out(p);
  for (std::int64_t x = 0; x < p; ++x) {
    out[x] = ctx.psi(base + ctx.mul(h.w, x)) * f[ctx.reduce(x + h.t)];
  }
  return out;
}

Mat pi_matrix(const PrimeContext& ctx, const HeisenbergElement& h) {
  const std::int64_t p = ctx.p();
  const std::int64_t base = ctx.add(h.z, ctx.mul(ctx.inv2(), ctx.mul(h.t, h.w)));
  Mat out = Mat::Zero(p, p);
  for (std::int64_t x = 0; x < p; ++x) {
    out(x, ctx.reduce(x + h.t)) = ctx.psi(base + ctx.mul(h.w, x));
  }
  return out;
}

KernelFunction weyl_transform(const PrimeContext& ctx, const Mat& op) {
  const std::int64_t p = ctx.p();
  if (op.rows() != p || op.cols() != p)
    throw std::invalid_argument("weyl_transform: operator must be p x p");
  KernelFunction kernel{&ctx, Mat(p, p)};
  // Tr(A pi(-t,-w,0)) = sum_y psi((1/2) t w - w y) A(y - t, y).
  for (std::int64_t t = 0; t < p; ++t) {
    for (std::int64_t w = 0; w < p; ++w) {
      const std::int64_t base = ctx.mul(ctx.inv2(), ctx.mul(t, w));
      Complex tr(0, 0);
      for (std::int64_t y = 0; y < p; ++y) {
        tr += ctx.psi(base - ctx.mul(w, y)) * op(ctx.reduce(y - t), y);
      }
      kernel.values(t, w) = tr / static_cast<double>(p);
    }
  }
  return kernel;
}

Mat pi_extended(const PrimeContext& ctx, const KernelFunction& kernel) {
  const std::int64_t p = ctx.p();
  Mat out = Mat::Zero(p, p);
  for (std::int64_t t = 0; t < p; ++t) {
    for (std::int64_t w = 0; w < p; ++w) {
      const Complex k = kernel.values(t, w);
      if (k == Complex(0, 0)) continue;
      const std::int64_t base = ctx.mul(ctx.inv2(), ctx.mul(t, w));
      for (std::int64_t x = 0; x < p; ++x) {
        out(x, ctx.reduce(x + t)) += k * ctx.psi(base + ctx.mul(w, x));
      }
    }
  }
  return out;
}

KernelFunction kernel_convolve(const PrimeContext& ctx, const KernelFunction& k1,
                               const KernelFunction& k2) {
  const std::int64_t p = ctx.p();
  KernelFunction out{&ctx, Mat::Zero(p, p)};
  for (std::int64_t xt = 0; xt < p; ++xt) {
    for (std::int64_t xw = 0; xw < p; ++xw) {
      Complex acc(0, 0);
      for (std::int64_t ut = 0; ut < p; ++ut) {
        for (std::int64_t uw = 0; uw < p; ++uw) {
          const Complex a = k1.values(ut, uw);
          const Complex b = k2.values(ctx.sub(xt, ut), ctx.sub(xw, uw));
          acc += a * b * ctx.psi(ctx.mul(ctx.inv2(), omega(ctx, ut, uw, xt, xw)));
        }
      }
      out.values(xt, xw) = acc;
    }
  }
  return out;
}

}  // namespace weil
