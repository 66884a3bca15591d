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

// Compiled with -mavx2 only; dispatch guarantees the CPU supports it before
// any of these functions runs.

#include <immintrin.h>

#include <bit>

#include "kernels_internal.hpp"

namespace soilcast::simd::avx2 {
namespace {

inline __m256d abs_pd(__m256d v) {
  return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

}  // namespace

void chebyshev_2d(const double* xs, const double* ys, std::size_t n, double qx,
                  double qy, double* out) {
  const __m256d vqx = _mm256_set1_pd(qx);
  const __m256d vqy = _mm256_set1_pd(qy);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d dx = abs_pd(_mm256_sub_pd(_mm256_loadu_pd(xs + j), vqx));
    const __m256d dy = abs_pd(_mm256_sub_pd(_mm256_loadu_pd(ys + j), vqy));
    // MAXPD returns the second operand unless the first is strictly greater,
    // matching the scalar select.
    _mm256_storeu_pd(out + j, _mm256_max_pd(dx, dy));
  }
  scalar::chebyshev_2d(xs + j, ys + j, n - j, qx, qy, out + j);
}

std::size_t count_within(const double* values, std::size_t n, double center,
                         double radius) {
  const __m256d vc = _mm256_set1_pd(center);
  const __m256d vr = _mm256_set1_pd(radius);
  std::size_t count = 0;
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d d = abs_pd(_mm256_sub_pd(_mm256_loadu_pd(values + j), vc));
    const int mask = _mm256_movemask_pd(_mm256_cmp_pd(d, vr, _CMP_LT_OQ));
    count += static_cast<std::size_t>(std::popcount(static_cast<unsigned>(mask)));
  }
  return count + scalar::count_within(values + j, n - j, center, radius);
}

void accumulate_squared_diff(const double* column, std::size_t n, double q,
                             double* acc) {
  const __m256d vq = _mm256_set1_pd(q);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(column + j), vq);
    const __m256d a = _mm256_loadu_pd(acc + j);
    _mm256_storeu_pd(acc + j, _mm256_add_pd(a, _mm256_mul_pd(d, d)));
  }
  scalar::accumulate_squared_diff(column + j, n - j, q, acc + j);
}

void relu_affine(const double* x, std::size_t n, double w, double b,
                 double* out) {
  const __m256d vw = _mm256_set1_pd(w);
  const __m256d vb = _mm256_set1_pd(b);
  const __m256d zero = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d z =
        _mm256_add_pd(_mm256_mul_pd(vw, _mm256_loadu_pd(x + j)), vb);
    _mm256_storeu_pd(out + j, _mm256_max_pd(z, zero));
  }
  scalar::relu_affine(x + j, n - j, w, b, out + j);
}

void axpy(double a, const double* x, std::size_t n, double* acc) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d p = _mm256_mul_pd(va, _mm256_loadu_pd(x + j));
    _mm256_storeu_pd(acc + j, _mm256_add_pd(_mm256_loadu_pd(acc + j), p));
  }
  scalar::axpy(a, x + j, n - j, acc + j);
}

}  // namespace soilcast::simd::avx2
