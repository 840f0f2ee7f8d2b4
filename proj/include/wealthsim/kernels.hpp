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

#pragma once

// Data-parallel inner loops of the tax and goal evaluators.
//
// Every kernel has a scalar reference implementation and, where the target
// supports it, an AVX2 (x86-64) or NEON (aarch64) variant. The variant is
// picked once at startup from CPUID, or forced through the WEALTHSIM_ISA
// environment variable ("scalar", "avx2", "neon").
//
// Reductions accumulate in four interleaved lanes (element i goes to lane
// i % 4) and combine as (l0 + l1) + (l2 + l3). The scalar reference follows
// the same order and no variant contracts multiply-add, so all variants are
// bit-identical. The equivalence tests rely on that.

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace wealthsim::kernels {

enum class Isa { Scalar, Avx2, Neon };

std::string_view to_string(Isa isa);

/// Absolute band thresholds and rates of a three-band marginal schedule.
struct Bands {
  double t1 = 0.0;  // lower edge of band 1
  double t2 = 0.0;  // lower edge of band 2
  double t3 = 0.0;  // lower edge of band 3
  double r1 = 0.0;
  double r2 = 0.0;
  double r3 = 0.0;
};

struct KernelTable {
  Isa isa;
  /// out[i] = r1*max(0, min(v,t2)-t1) + r2*max(0, min(v,t3)-t2) + r3*max(0, v-t3)
  void (*band_liability)(const double* v, std::size_t n, const Bands& b, double* out);
  /// sum of w[i] * x[i]
  double (*weighted_sum)(const double* x, const double* w, std::size_t n);
  /// sum of w[i] over v[i] > threshold
  double (*weighted_count_above)(const double* v, const double* w, std::size_t n,
                                 double threshold);
  /// out[i] = a[i] - b[i]
  void (*subtract)(const double* a, const double* b, std::size_t n, double* out);
  /// out[i] = x[i] - cut[i] * (x[i] / denom[i]) where denom[i] > 0, else x[i]
  void (*proportional_cut)(const double* x, const double* cut, const double* denom,
                           std::size_t n, double* out);
};

const KernelTable& scalar_table();
#if defined(__x86_64__) || defined(_M_X64)
const KernelTable& avx2_table();
#endif
#if defined(__aarch64__)
const KernelTable& neon_table();
#endif

/// Variants usable on this CPU, scalar first.
std::vector<Isa> available_isas();
const KernelTable& table_for(Isa isa);

/// The dispatched table.
const KernelTable& active();

// Span conveniences over the active table.

void band_liability(std::span<const double> v, const Bands& b, std::span<double> out);
std::vector<double> band_liability(std::span<const double> v, const Bands& b);
double weighted_sum(std::span<const double> x, std::span<const double> w);
double weighted_count_above(std::span<const double> v, std::span<const double> w,
                            double threshold);
std::vector<double> subtract(std::span<const double> a, std::span<const double> b);
std::vector<double> proportional_cut(std::span<const double> x, std::span<const double> cut,
                                     std::span<const double> denom);

}  // namespace wealthsim::kernels
