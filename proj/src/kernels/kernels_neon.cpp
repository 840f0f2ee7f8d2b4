// Copyright 2026 The Wealthsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "wealthsim/kernels.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

namespace wealthsim::kernels {

namespace {

// Two float64x2 accumulators: acc01 holds lanes 0,1 and acc23 lanes 2,3.

void band_liability_neon(const double* v, std::size_t n, const Bands& b, double* out) {
  const float64x2_t zero = vdupq_n_f64(0.0);
  const float64x2_t t1 = vdupq_n_f64(b.t1);
  const float64x2_t t2 = vdupq_n_f64(b.t2);
  const float64x2_t t3 = vdupq_n_f64(b.t3);
  const float64x2_t r1 = vdupq_n_f64(b.r1);
  const float64x2_t r2 = vdupq_n_f64(b.r2);
  const float64x2_t r3 = vdupq_n_f64(b.r3);
  auto pos = [&](float64x2_t a) { return vbslq_f64(vcgtq_f64(a, zero), a, zero); };
  auto lo = [](float64x2_t a, float64x2_t t) { return vbslq_f64(vcltq_f64(a, t), a, t); };
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t x = vld1q_f64(v + i);
    const float64x2_t a = vmulq_f64(r1, pos(vsubq_f64(lo(x, t2), t1)));
    const float64x2_t c = vmulq_f64(r2, pos(vsubq_f64(lo(x, t3), t2)));
    const float64x2_t d = vmulq_f64(r3, pos(vsubq_f64(x, t3)));
    vst1q_f64(out + i, vaddq_f64(vaddq_f64(a, c), d));
  }
  if (i < n) scalar_table().band_liability(v + i, n - i, b, out + i);
}

double weighted_sum_neon(const double* x, const double* w, std::size_t n) {
  float64x2_t acc01 = vdupq_n_f64(0.0);
  float64x2_t acc23 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc01 = vaddq_f64(acc01, vmulq_f64(vld1q_f64(w + i), vld1q_f64(x + i)));
    acc23 = vaddq_f64(acc23, vmulq_f64(vld1q_f64(w + i + 2), vld1q_f64(x + i + 2)));
  }
  double l[4];
  vst1q_f64(l, acc01);
  vst1q_f64(l + 2, acc23);
  for (std::size_t j = 0; i < n; ++i, ++j) l[j] += w[i] * x[i];
  return (l[0] + l[1]) + (l[2] + l[3]);
}

double weighted_count_above_neon(const double* v, const double* w, std::size_t n,
                                 double threshold) {
  const float64x2_t t = vdupq_n_f64(threshold);
  const float64x2_t zero = vdupq_n_f64(0.0);
  float64x2_t acc01 = zero;
  float64x2_t acc23 = zero;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc01 = vaddq_f64(acc01, vbslq_f64(vcgtq_f64(vld1q_f64(v + i), t), vld1q_f64(w + i), zero));
    acc23 = vaddq_f64(acc23,
                      vbslq_f64(vcgtq_f64(vld1q_f64(v + i + 2), t), vld1q_f64(w + i + 2), zero));
  }
  double l[4];
  vst1q_f64(l, acc01);
  vst1q_f64(l + 2, acc23);
  for (std::size_t j = 0; i < n; ++i, ++j) l[j] += v[i] > threshold ? w[i] : 0.0;
  return (l[0] + l[1]) + (l[2] + l[3]);
}

void subtract_neon(const double* a, const double* b, std::size_t n, double* out) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(out + i, vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  for (; i < n; ++i) out[i] = a[i] - b[i];
}

void proportional_cut_neon(const double* x, const double* cut, const double* denom,
                           std::size_t n, double* out) {
  const float64x2_t zero = vdupq_n_f64(0.0);
  const float64x2_t one = vdupq_n_f64(1.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t xv = vld1q_f64(x + i);
    const float64x2_t dv = vld1q_f64(denom + i);
    const uint64x2_t mask = vcgtq_f64(dv, zero);
    const float64x2_t safe = vbslq_f64(mask, dv, one);
    const float64x2_t p = vmulq_f64(vld1q_f64(cut + i), vdivq_f64(xv, safe));
    vst1q_f64(out + i, vbslq_f64(mask, vsubq_f64(xv, p), xv));
  }
  if (i < n) scalar_table().proportional_cut(x + i, cut + i, denom + i, n - i, out + i);
}

}  // namespace

const KernelTable& neon_table() {
  static const KernelTable table{
      Isa::Neon,         band_liability_neon,   weighted_sum_neon,
      weighted_count_above_neon, subtract_neon, proportional_cut_neon,
  };
  return table;
}

}  // namespace wealthsim::kernels

#endif  // __aarch64__
