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

#include <gtest/gtest.h>

#include <bit>
#include <cstdint>
#include <limits>
#include <random>

#include "fixtures.hpp"
#include "soilcast/knn_forecaster.hpp"
#include "soilcast/ksg.hpp"
#include "soilcast/simd/kernels.hpp"
#include "soilcast/virtual_sensor.hpp"

namespace soilcast {
namespace {

using simd::KernelTable;

// Bitwise equality; NaN payloads and signed zeros included.
::testing::AssertionResult same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return ::testing::AssertionFailure() << "size mismatch";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::bit_cast<std::uint64_t>(a[i]) != std::bit_cast<std::uint64_t>(b[i])) {
      return ::testing::AssertionFailure() << "index " << i << ": " << a[i] << " vs " << b[i];
    }
  }
  return ::testing::AssertionSuccess();
}

// Random values with the awkward ones mixed in.
std::vector<double> awkward(std::size_t n, std::mt19937_64& rng) {
  static const double kSpecial[] = {0.0,
                                    -0.0,
                                    std::numeric_limits<double>::infinity(),
                                    -std::numeric_limits<double>::infinity(),
                                    std::numeric_limits<double>::quiet_NaN(),
                                    std::numeric_limits<double>::denorm_min(),
                                    -std::numeric_limits<double>::denorm_min(),
                                    1e308,
                                    -1e-308};
  std::normal_distribution<double> normal(0.0, 3.0);
  std::uniform_int_distribution<int> pick(0, 9);
  std::vector<double> v(n);
  for (auto& x : v) {
    const int p = pick(rng);
    x = p < 9 && pick(rng) == 0 ? kSpecial[p] : normal(rng);
  }
  return v;
}

class SimdEquivalence : public ::testing::Test {
 protected:
  void SetUp() override {
    avx2_ = simd::avx2_kernels();
    if (avx2_ == nullptr) GTEST_SKIP() << "AVX2 not available on this machine";
  }
  const KernelTable& scalar_ = simd::scalar_kernels();
  const KernelTable* avx2_ = nullptr;
};

TEST(SimdDispatch, TableIsConsistent) {
  const auto& k = simd::kernels();
  if (simd::avx2_kernels() == nullptr) {
    EXPECT_EQ(k.isa, simd::Isa::kScalar);
  } else {
    EXPECT_TRUE(k.isa == simd::Isa::kAvx2 || k.isa == simd::Isa::kScalar);
  }
  EXPECT_EQ(simd::isa_name(simd::Isa::kScalar), "scalar");
  EXPECT_EQ(simd::scalar_kernels().isa, simd::Isa::kScalar);
}

TEST_F(SimdEquivalence, Chebyshev) {
  std::mt19937_64 rng(1);
  for (std::size_t n = 0; n < 70; ++n) {
    // Offset by one element so the vector loads are unaligned.
    auto xs = awkward(n + 1, rng), ys = awkward(n + 1, rng);
    for (double q : {0.0, 1.5, -0.0}) {
      std::vector<double> a(n), b(n);
      scalar_.chebyshev_2d(xs.data() + 1, ys.data() + 1, n, q, -q, a.data());
      avx2_->chebyshev_2d(xs.data() + 1, ys.data() + 1, n, q, -q, b.data());
      EXPECT_TRUE(same_bits(a, b)) << "n=" << n;
    }
  }
}

TEST_F(SimdEquivalence, CountWithin) {
  std::mt19937_64 rng(2);
  for (std::size_t n = 0; n < 70; ++n) {
    auto v = awkward(n + 1, rng);
    for (double r : {0.0, 0.5, 2.0, std::numeric_limits<double>::infinity()}) {
      EXPECT_EQ(scalar_.count_within(v.data() + 1, n, 0.25, r),
                avx2_->count_within(v.data() + 1, n, 0.25, r))
          << "n=" << n << " r=" << r;
    }
  }
  // Exactly at the radius is outside.
  const std::vector<double> edge{1.0, 1.0, 1.0, 1.0, 1.0};
  EXPECT_EQ(avx2_->count_within(edge.data(), 5, 0.0, 1.0), 0u);
  EXPECT_EQ(scalar_.count_within(edge.data(), 5, 0.0, 1.0), 0u);
}

TEST_F(SimdEquivalence, AccumulateSquaredDiff) {
  std::mt19937_64 rng(3);
  for (std::size_t n = 0; n < 70; ++n) {
    auto col = awkward(n + 1, rng);
    auto a = awkward(n, rng);
    auto b = a;
    scalar_.accumulate_squared_diff(col.data() + 1, n, 0.75, a.data());
    avx2_->accumulate_squared_diff(col.data() + 1, n, 0.75, b.data());
    EXPECT_TRUE(same_bits(a, b)) << "n=" << n;
  }
}

TEST_F(SimdEquivalence, ReluAffine) {
  std::mt19937_64 rng(4);
  for (std::size_t n = 0; n < 70; ++n) {
    auto x = awkward(n + 1, rng);
    for (auto [w, b] : {std::pair{1.0, 0.0}, std::pair{-0.3, 0.1}, std::pair{2.5, -0.0}}) {
      std::vector<double> s(n), v(n);
      scalar_.relu_affine(x.data() + 1, n, w, b, s.data());
      avx2_->relu_affine(x.data() + 1, n, w, b, v.data());
      EXPECT_TRUE(same_bits(s, v)) << "n=" << n << " w=" << w;
    }
  }
}

TEST_F(SimdEquivalence, Axpy) {
  std::mt19937_64 rng(5);
  for (std::size_t n = 0; n < 70; ++n) {
    auto x = awkward(n + 1, rng);
    auto a = awkward(n, rng);
    auto b = a;
    scalar_.axpy(-1.25, x.data() + 1, n, a.data());
    avx2_->axpy(-1.25, x.data() + 1, n, b.data());
    EXPECT_TRUE(same_bits(a, b)) << "n=" << n;
  }
}

TEST_F(SimdEquivalence, SquaredDistances) {
  std::mt19937_64 rng(6);
  for (std::size_t rows : {1u, 3u, 4u, 5u, 17u, 200u}) {
    for (std::size_t dim : {1u, 2u, 25u}) {
      const auto cols = awkward(rows * dim, rng);
      const auto q = awkward(dim, rng);
      std::vector<double> a(rows), b(rows);
      simd::squared_distances(cols, rows, q, a, scalar_);
      simd::squared_distances(cols, rows, q, b, *avx2_);
      EXPECT_TRUE(same_bits(a, b)) << rows << "x" << dim;
    }
  }
}

TEST_F(SimdEquivalence, KsgEstimate) {
  KsgConfig cfg;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    for (double rho : {0.0, 0.5, 0.9}) {
      std::vector<double> x, y;
      fixtures::gaussian_pair(1000 + 37 * seed, rho, seed, x, y);
      const double s = ksg_mi(x, y, cfg, scalar_);
      const double v = ksg_mi(x, y, cfg, *avx2_);
      EXPECT_EQ(std::bit_cast<std::uint64_t>(s), std::bit_cast<std::uint64_t>(v))
          << "seed " << seed << " rho " << rho;
    }
  }
}

TEST_F(SimdEquivalence, KnnForecast) {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto s = fixtures::series("S", fixtures::diurnal(600, 25.0, 3.0, 0.4, seed));
    const auto model = fit_knn(s, WindowSpec{336, 600}, KnnConfig{});
    EXPECT_TRUE(same_bits(model.forecast(24, scalar_), model.forecast(24, *avx2_)));
  }
}

TEST_F(SimdEquivalence, BackupTraining) {
  const auto nb = fixtures::diurnal(400, 25.0, 3.0, 0.3, 7);
  std::vector<double> tg(nb.size());
  for (std::size_t i = 0; i < nb.size(); ++i) tg[i] = 0.8 * nb[i] + 4.0 + 0.1 * std::sin(0.3 * i);
  MlpTrainingConfig cfg;
  cfg.epochs = 300;
  for (std::size_t lags : {0u, 2u}) {
    cfg.input_lags = lags;
    const auto a = train_backup(fixtures::series("N", nb), fixtures::series("T", tg),
                                WindowSpec{300, 400}, 11, cfg, scalar_);
    const auto b = train_backup(fixtures::series("N", nb), fixtures::series("T", tg),
                                WindowSpec{300, 400}, 11, cfg, *avx2_);
    EXPECT_TRUE(same_bits(a.hidden_weights, b.hidden_weights));
    EXPECT_TRUE(same_bits({a.hidden_bias.begin(), a.hidden_bias.end()},
                          {b.hidden_bias.begin(), b.hidden_bias.end()}));
    EXPECT_TRUE(same_bits({a.output_weights.begin(), a.output_weights.end()},
                          {b.output_weights.begin(), b.output_weights.end()}));
    EXPECT_EQ(std::bit_cast<std::uint64_t>(a.output_bias), std::bit_cast<std::uint64_t>(b.output_bias));
    EXPECT_EQ(std::bit_cast<std::uint64_t>(a.training_mae), std::bit_cast<std::uint64_t>(b.training_mae));
  }
}

}  // namespace
}  // namespace soilcast
