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

// Built with -mavx2 (no -mfma); only reached after a CPUID check.

#include "wealthsim/kernels.hpp"

#include <immintrin.h>

namespace wealthsim::kernels {

namespace {

// Lane j of a 256-bit accumulator holds the elements i with i % 4 == j,
// matching the scalar reference.

void band_liability_avx2(const double* v, std::size_t n, const Bands& b, double* out) {
  const __m256d zero = _mm256_setzero_pd();
  const __m256d t1 = _mm256_set1_pd(b.t1);
  const __m256d t2 = _mm256_set1_pd(b.t2);
  const __m256d t3 = _mm256_set1_pd(b.t3);
  const __m256d r1 = _mm256_set1_pd(b.r1);
  const __m256d r2 = _mm256_set1_pd(b.r2);
  const __m256d r3 = _mm256_set1_pd(b.r3);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x = _mm256_loadu_pd(v + i);
    // max_pd(a, 0) yields a only when a > 0, min_pd(x, t) yields x only when
    // x < t: the same selections as the scalar reference.
    const __m256d a = _mm256_mul_pd(r1, _mm256_max_pd(_mm256_sub_pd(_mm256_min_pd(x, t2), t1), zero));
    const __m256d c = _mm256_mul_pd(r2, _mm256_max_pd(_mm256_sub_pd(_mm256_min_pd(x, t3), t2), zero));
    const __m256d d = _mm256_mul_pd(r3, _mm256_max_pd(_mm256_sub_pd(x, t3), zero));
    _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_add_pd(a, c), d));
  }
  if (i < n) scalar_table().band_liability(v + i, n - i, b, out + i);
}

double weighted_sum_avx2(const double* x, const double* w, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(x + i)));
  }
  alignas(32) double l[4];
  _mm256_store_pd(l, acc);
  for (std::size_t j = 0; i < n; ++i, ++j) l[j] += w[i] * x[i];
  return (l[0] + l[1]) + (l[2] + l[3]);
}

double weighted_count_above_avx2(const double* v, const double* w, std::size_t n,
                                 double threshold) {
  const __m256d t = _mm256_set1_pd(threshold);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d mask = _mm256_cmp_pd(_mm256_loadu_pd(v + i), t, _CMP_GT_OQ);
    acc = _mm256_add_pd(acc, _mm256_and_pd(mask, _mm256_loadu_pd(w + i)));
  }
  alignas(32) double l[4];
  _mm256_store_pd(l, acc);
  for (std::size_t j = 0; i < n; ++i, ++j) l[j] += v[i] > threshold ? w[i] : 0.0;
  return (l[0] + l[1]) + (l[2] + l[3]);
}

void subtract_avx2(const double* a, const double* b, std::size_t n, double* out) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out + i, _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  for (; i < n; ++i) out[i] = a[i] - b[i];
}

void proportional_cut_avx2(const double* x, const double* cut, const double* denom,
                           std::size_t n, double* out) {
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d xv = _mm256_loadu_pd(x + i);
    const __m256d dv = _mm256_loadu_pd(denom + i);
    const __m256d mask = _mm256_cmp_pd(dv, zero, _CMP_GT_OQ);
    // Lanes with denom <= 0 divide by 1 and are then discarded by the blend.
    const __m256d safe = _mm256_blendv_pd(_mm256_set1_pd(1.0), dv, mask);
    const __m256d p = _mm256_mul_pd(_mm256_loadu_pd(cut + i), _mm256_div_pd(xv, safe));
    _mm256_storeu_pd(out + i, _mm256_blendv_pd(xv, _mm256_sub_pd(xv, p), mask));
  }
  if (i < n) scalar_table().proportional_cut(x + i, cut + i, denom + i, n - i, out + i);
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table{
      Isa::Avx2,         band_liability_avx2,   weighted_sum_avx2,
      weighted_count_above_avx2, subtract_avx2, proportional_cut_avx2,
  };
  return table;
}

}  // namespace wealthsim::kernels
