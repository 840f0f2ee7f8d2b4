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

namespace wealthsim::kernels {

namespace {

inline double pos(double x) { return x > 0.0 ? x : 0.0; }
inline double lo(double a, double b) { return a < b ? a : b; }

void band_liability_scalar(const double* v, std::size_t n, const Bands& b, double* out) {
  for (std::size_t i = 0; i < n; ++i) {
    const double x = v[i];
    const double a = b.r1 * pos(lo(x, b.t2) - b.t1);
    const double c = b.r2 * pos(lo(x, b.t3) - b.t2);
    const double d = b.r3 * pos(x - b.t3);
    out[i] = (a + c) + d;
  }
}

double weighted_sum_scalar(const double* x, const double* w, std::size_t n) {
  double acc[4] = {0.0, 0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    const double p = w[i] * x[i];
    acc[i & 3] += p;
  }
  return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

double weighted_count_above_scalar(const double* v, const double* w, std::size_t n,
                                   double threshold) {
  double acc[4] = {0.0, 0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    acc[i & 3] += v[i] > threshold ? w[i] : 0.0;
  }
  return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

void subtract_scalar(const double* a, const double* b, std::size_t n, double* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] - b[i];
}

void proportional_cut_scalar(const double* x, const double* cut, const double* denom,
                             std::size_t n, double* out) {
  for (std::size_t i = 0; i < n; ++i) {
    if (denom[i] > 0.0) {
      const double q = x[i] / denom[i];
      const double p = cut[i] * q;
      out[i] = x[i] - p;
    } else {
      out[i] = x[i];
    }
  }
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{
      Isa::Scalar,         band_liability_scalar,   weighted_sum_scalar,
      weighted_count_above_scalar, subtract_scalar, proportional_cut_scalar,
  };
  return table;
}

}  // namespace wealthsim::kernels
