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

#include <cstdlib>
#include <stdexcept>
#include <string>

#include "wealthsim/error.hpp"
#include "wealthsim/kernels.hpp"

namespace wealthsim::kernels {

namespace {

bool cpu_has(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if (defined(__x86_64__) || defined(_M_X64)) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(__aarch64__)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& select() {
  if (const char* forced = std::getenv("WEALTHSIM_ISA")) {
    const std::string want(forced);
    for (Isa isa : available_isas()) {
      if (to_string(isa) == want) return table_for(isa);
    }
    // Unknown or unsupported request: fall back to the reference kernels.
    return scalar_table();
  }
  return table_for(available_isas().back());
}

void check(std::size_t a, std::size_t b) {
  if (a != b) throw Error(Errc::LengthMismatch, "kernel operands differ in length");
}

}  // namespace

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "scalar";
}

std::vector<Isa> available_isas() {
  std::vector<Isa> out{Isa::Scalar};
  if (cpu_has(Isa::Avx2)) out.push_back(Isa::Avx2);
  if (cpu_has(Isa::Neon)) out.push_back(Isa::Neon);
  return out;
}

const KernelTable& table_for(Isa isa) {
  switch (isa) {
#if defined(__x86_64__) || defined(_M_X64)
    case Isa::Avx2:
      if (cpu_has(Isa::Avx2)) return avx2_table();
      break;
#endif
#if defined(__aarch64__)
    case Isa::Neon:
      return neon_table();
#endif
    default:
      break;
  }
  return scalar_table();
}

const KernelTable& active() {
  static const KernelTable& table = select();
  return table;
}

void band_liability(std::span<const double> v, const Bands& b, std::span<double> out) {
  check(v.size(), out.size());
  active().band_liability(v.data(), v.size(), b, out.data());
}

std::vector<double> band_liability(std::span<const double> v, const Bands& b) {
  std::vector<double> out(v.size());
  band_liability(v, b, out);
  return out;
}

double weighted_sum(std::span<const double> x, std::span<const double> w) {
  check(x.size(), w.size());
  return active().weighted_sum(x.data(), w.data(), x.size());
}

double weighted_count_above(std::span<const double> v, std::span<const double> w,
                            double threshold) {
  check(v.size(), w.size());
  return active().weighted_count_above(v.data(), w.data(), v.size(), threshold);
}

std::vector<double> subtract(std::span<const double> a, std::span<const double> b) {
  check(a.size(), b.size());
  std::vector<double> out(a.size());
  active().subtract(a.data(), b.data(), a.size(), out.data());
  return out;
}

std::vector<double> proportional_cut(std::span<const double> x, std::span<const double> cut,
                                     std::span<const double> denom) {
  check(x.size(), cut.size());
  check(x.size(), denom.size());
  std::vector<double> out(x.size());
  active().proportional_cut(x.data(), cut.data(), denom.data(), x.size(), out.data());
  return out;
}

}  // namespace wealthsim::kernels
