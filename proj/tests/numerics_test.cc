/*
 * Copyright 2026 The CLWE Reductions Authors.
 *
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

#include "clwe/numerics.h"

#include <cmath>
#include <cstdint>
#include <vector>

#include <gtest/gtest.h>

#include "clwe/rng.h"
#include "clwe/samplers.h"
#include "oracle_values.h"

namespace clwe {
namespace {

TEST(Rho, CenterIsOne) {
  const std::vector<double> x = {0.3, -1.2, 2.0};
  EXPECT_DOUBLE_EQ(rho(x, GaussianParam::Make(2.5, x)), 1.0);
  EXPECT_DOUBLE_EQ(rho(1.7, 0.4, 1.7), 1.0);
}

TEST(Rho, UnitVectorMatchesOracle) {
  const std::vector<double> x = {1.0, 0.0, 0.0};
  EXPECT_NEAR(rho(x, GaussianParam::Centered(1.0, 3)), oracle::kRhoE1, 1e-15);
}

TEST(Rho, JointScalingInvariant) {
  const std::vector<double> x = {0.4, -0.9};
  const std::vector<double> c = {0.1, 0.2};
  const double base = rho(x, GaussianParam::Make(1.3, c));
  for (double t : {0.01, 0.5, 7.0, 1e3}) {
    std::vector<double> xs = {c[0] + t * (x[0] - c[0]), c[1] + t * (x[1] - c[1])};
    EXPECT_NEAR(rho(xs, GaussianParam::Make(1.3 * t, c)), base, 1e-12);
  }
}

TEST(Rho, SymmetricAboutCenter) {
  for (double d = 0.0; d < 3.0; d += 0.137) {
    EXPECT_NEAR(rho(0.7 + d, 0.9, 0.7), rho(0.7 - d, 0.9, 0.7), 1e-12);
  }
}

TEST(Rho, RejectsBadWidth) {
  EXPECT_THROW(GaussianParam::Make(0.0, {0.0}), std::invalid_argument);
  EXPECT_THROW(GaussianParam::Make(-1.0, {0.0}), std::invalid_argument);
  const std::vector<double> x = {1.0};
  EXPECT_THROW(rho(x, GaussianParam::Centered(1.0, 2)), std::invalid_argument);
}

TEST(Smoothing, ClosedFormValues) {
  EXPECT_NEAR(smoothing_bound(1, std::ldexp(1.0, -40)), oracle::kSmoothing1, 1e-12);
  EXPECT_NEAR(smoothing_bound(2, 0.5), oracle::kSmoothing2Half, 1e-12);
  EXPECT_DOUBLE_EQ(kDefaultSmoothingEps, std::ldexp(1.0, -40));
}

TEST(Smoothing, MonotoneInEpsAndN) {
  for (int n : {1, 4, 64}) {
    double prev = smoothing_bound(n, 1e-12);
    for (double eps : {1e-9, 1e-6, 1e-3, 0.1, 0.5}) {
      const double cur = smoothing_bound(n, eps);
      EXPECT_GE(prev, cur);
      prev = cur;
    }
  }
  EXPECT_LT(smoothing_bound(2, 0.01), smoothing_bound(3, 0.01));
}

TEST(Smoothing, RejectsBadArguments) {
  EXPECT_THROW(smoothing_bound(0, 0.1), std::invalid_argument);
  EXPECT_THROW(smoothing_bound(2, 0.0), std::invalid_argument);
  EXPECT_THROW(smoothing_bound(2, 1.0), std::invalid_argument);
}

TEST(MinEntropy, SmallCases) {
  EXPECT_NEAR(min_entropy_sparse(4, 1), oracle::kMinEntropy41, 1e-12);
  for (int k : {1, 5, 20}) EXPECT_NEAR(min_entropy_sparse(k, k), k, 1e-9);
}

TEST(MinEntropy, AtLeastSparsityBound) {
  for (int n = 1; n <= 64; ++n) {
    for (int k = 1; k <= n; ++k) {
      EXPECT_GE(min_entropy_sparse(n, k) + 1e-9, k * std::log2(static_cast<double>(n) / k));
    }
  }
  EXPECT_THROW(min_entropy_sparse(3, 4), std::invalid_argument);
  EXPECT_THROW(min_entropy_sparse(3, 0), std::invalid_argument);
}

TEST(Modular, Representatives) {
  EXPECT_DOUBLE_EQ(mod_positive(-0.25, 1.0), 0.75);
  EXPECT_DOUBLE_EQ(centered_mod(0.75, 1.0), -0.25);
  EXPECT_DOUBLE_EQ(centered_mod(0.5, 1.0), -0.5);
  EXPECT_EQ(mod_q(-3, 17), 14);
  EXPECT_EQ(centered_mod_q(9, 17), -8);
  EXPECT_EQ(centered_mod_q(8, 17), 8);
  EXPECT_EQ(centered_mod_q(8, 16), -8);
}

TEST(KsTest, NullSamplesPass) {
  RngStream rng(11);
  std::vector<double> xs(100000);
  for (double& x : xs) x = rng.uniform();
  EXPECT_TRUE(ks_test(xs, uniform_cdf(0.0, 1.0)).pass);
}

TEST(KsTest, ConstantSamplesFail) {
  std::vector<double> xs(1000, 0.0);
  const TestReport r = ks_test(xs, gaussian_cdf(1.0));
  EXPECT_GE(r.statistic, 0.5);
  EXPECT_FALSE(r.pass);
}

TEST(KsTest, WrongWidthFails) {
  RngStream rng(12);
  const double beta = 0.3;
  std::vector<double> xs(10000);
  for (double& x : xs) x = sample_continuous_gaussian(beta, rng);
  EXPECT_TRUE(ks_test(xs, gaussian_cdf(beta)).pass);
  EXPECT_FALSE(ks_test(xs, gaussian_cdf(2.0 * beta)).pass);
}

TEST(KsTest, TooFewSamples) {
  std::vector<double> xs(10, 0.5);
  EXPECT_THROW(ks_test(xs, uniform_cdf(0.0, 1.0)), std::invalid_argument);
}

TEST(Chi2Uniform, NullPasses) {
  RngStream rng(13);
  std::vector<std::int64_t> v(10000);
  for (auto& x : v) x = static_cast<std::int64_t>(rng.uniform_int(17));
  EXPECT_TRUE(chi2_uniform_modq(v, 17).pass);
}

TEST(Chi2Uniform, AllZeroFails) {
  std::vector<std::int64_t> v(10000, 0);
  EXPECT_FALSE(chi2_uniform_modq(v, 17).pass);
}

TEST(Chi2Uniform, NarrowGaussianFails) {
  RngStream rng(14);
  std::vector<std::int64_t> v(10000);
  for (auto& x : v) x = mod_q(sample_discrete_gaussian_int(0.3, rng), 17);
  EXPECT_FALSE(chi2_uniform_modq(v, 17).pass);
}

TEST(Chi2Pmf, ExactPmfPasses) {
  RngStream rng(15);
  std::int64_t lo = 0;
  const std::vector<double> pmf = discrete_gaussian_pmf(4.0, &lo);
  std::vector<std::int64_t> v(50000);
  for (auto& x : v) x = sample_discrete_gaussian_int(4.0, rng);
  EXPECT_TRUE(chi2_pmf(v, lo, pmf).pass);
  for (auto& x : v) x = sample_discrete_gaussian_int(5.0, rng);
  EXPECT_FALSE(chi2_pmf(v, lo, pmf).pass);
}

TEST(Calibration, RejectionRateNearLevel) {
  RngStream rng(16);
  int ks_reject = 0;
  int chi_reject = 0;
  const int reps = 1000;
  for (int rep = 0; rep < reps; ++rep) {
    std::vector<double> xs(500);
    for (double& x : xs) x = rng.uniform();
    ks_reject += !ks_test(xs, uniform_cdf(0.0, 1.0), 0.01).pass;
    std::vector<std::int64_t> v(500);
    for (auto& x : v) x = static_cast<std::int64_t>(rng.uniform_int(17));
    chi_reject += !chi2_uniform_modq(v, 17, 0.01).pass;
  }
  EXPECT_LE(ks_reject, 20);
  EXPECT_LE(chi_reject, 20);
}

TEST(TvEstimate, IdenticalAndDisjoint) {
  const std::vector<std::vector<double>> a = {{0.1}, {0.2}, {0.3}};
  const std::vector<std::vector<double>> b = {{5.1}, {5.2}, {5.3}};
  const Binning bins{-10.0, 10.0, 100};
  EXPECT_DOUBLE_EQ(tv_estimate(a, a, bins), 0.0);
  EXPECT_DOUBLE_EQ(tv_estimate(a, b, bins), 1.0);
  EXPECT_DOUBLE_EQ(tv_estimate(b, a, bins), 1.0);
}

TEST(TvEstimate, SymmetricAndBounded) {
  RngStream rng(17);
  std::vector<std::vector<double>> a(2000), b(3000);
  for (auto& x : a) x = {rng.normal(), rng.normal()};
  for (auto& x : b) x = {1.5 * rng.normal(), rng.normal() + 0.2};
  const Binning bins{-4.0, 4.0, 20};
  const double ab = tv_estimate(a, b, bins);
  EXPECT_DOUBLE_EQ(ab, tv_estimate(b, a, bins));
  EXPECT_GE(ab, 0.0);
  EXPECT_LE(ab, 1.0);
}

TEST(TvEstimate, GaussianWidthsMatchQuadrature) {
  RngStream rng(18);
  const int n = 1000000;
  std::vector<std::vector<double>> a(n), b(n);
  for (auto& x : a) x = {sample_continuous_gaussian(1.0, rng)};
  for (auto& x : b) x = {sample_continuous_gaussian(1.1, rng)};
  const double tv = tv_estimate(a, b, Binning{-2.5, 2.5, 200});
  EXPECT_NEAR(tv, oracle::kTvD1D11, 0.01);
}

TEST(TvEstimate, VersusCdf) {
  RngStream rng(19);
  std::vector<double> xs(200000);
  for (double& x : xs) x = sample_continuous_gaussian(1.0, rng);
  EXPECT_LT(tv_estimate_vs_cdf(xs, gaussian_cdf(1.0), Binning{-2.0, 2.0, 40}), 0.01);
  EXPECT_GT(tv_estimate_vs_cdf(xs, gaussian_cdf(1.0, 1.0), Binning{-2.0, 2.0, 40}), 0.3);
}

TEST(WrappedCdf, EndpointsAndSymmetry) {
  const Cdf f = wrapped_gaussian_cdf(0.3, 1.0);
  EXPECT_NEAR(f(-0.5), 0.0, 1e-12);
  EXPECT_NEAR(f(0.5), 1.0, 1e-12);
  EXPECT_NEAR(f(0.0), 0.5, 1e-12);
  EXPECT_NEAR(f(0.1) + f(-0.1), 1.0, 1e-12);
}

}  // namespace
}  // namespace clwe
