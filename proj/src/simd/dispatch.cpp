/*
 * Copyright 2026 The Soilcast Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

#include "soilcast/simd/kernels.hpp"
#include "kernels_internal.hpp"

namespace soilcast::simd {
namespace {

constexpr KernelTable kScalarTable{
    Isa::kScalar,          scalar::chebyshev_2d, scalar::count_within,
    scalar::accumulate_squared_diff, scalar::relu_affine, scalar::axpy};

#if defined(SOILCAST_HAVE_AVX2)
constexpr KernelTable kAvx2Table{
    Isa::kAvx2,          avx2::chebyshev_2d, avx2::count_within,
    avx2::accumulate_squared_diff, avx2::relu_affine, avx2::axpy};
#endif

const KernelTable& select() {
  const char* forced = std::getenv("SOILCAST_SIMD");
  if (forced != nullptr && std::strcmp(forced, "scalar") == 0) {
    return kScalarTable;
  }
  if (const KernelTable* t = avx2_kernels()) return *t;
  return kScalarTable;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
  }
  return "unknown";
}

const KernelTable& scalar_kernels() { return kScalarTable; }

const KernelTable* avx2_kernels() {
#if defined(SOILCAST_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &kAvx2Table : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& kernels() {
  static const KernelTable& table = select();
  return table;
}

void squared_distances(std::span<const double> columns, std::size_t n_rows,
                       std::span<const double> query, std::span<double> out,
                       const KernelTable& table) {
  if (columns.size() != n_rows * query.size() || out.size() != n_rows) {
    throw std::invalid_argument("squared_distances: shape mismatch");
  }
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t d = 0; d < query.size(); ++d) {
    table.accumulate_squared_diff(columns.data() + d * n_rows, n_rows, query[d],
                                  out.data());
  }
}

}  // namespace soilcast::simd
