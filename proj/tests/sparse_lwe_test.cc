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

#include "clwe/sparse_lwe.h"

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "clwe/int_matrix.h"
#include "clwe/numerics.h"
#include "clwe/rng.h"
#include "clwe/samplers.h"
#include "oracle_values.h"

namespace clwe {
namespace {

std::vector<std::int64_t> random_sparse(int n, int k, RngStream& rng) {
  std::vector<std::int64_t> z;
  for (double x : sample_sparse_secret(n, k, rng).entries) z.push_back(std::llround(x));
  return z;
}

TEST(IntMatrix, InverseModPrime) {
  RngStream rng(301);
  for (int i = 0; i < 20; ++i) {
    const IntMatrix w = sample_invertible_mod_prime(4, 17, rng);
    const auto inv = inverse_mod_prime(w, 17);
    ASSERT_TRUE(inv.has_value());
    EXPECT_EQ(w.mul_mod(*inv, 17), IntMatrix::identity(4));
  }
  EXPECT_FALSE(inverse_mod_prime(IntMatrix{{1, 2}, {2, 4}}, 17).has_value());
  EXPECT_THROW(inverse_mod_prime(IntMatrix::identity(2), 16), std::invalid_argument);
}

TEST(Gadgets, SmallCaseV) {
  const GadgetSet g = build_gadgets(3, 2);
  EXPECT_EQ(g.v, (std::vector<std::int64_t>{0, 2, 0, 0, 1, 1, 1, 1}));
  std::int64_t sq = 0;
  for (auto x : g.v) sq += x * x;
  EXPECT_EQ(sq, 8);
  EXPECT_EQ(g.Q.rows(), 3u);
  EXPECT_EQ(g.Q.cols(), 11u);
}

TEST(Gadgets, IdentitiesOnGrid) {
  for (int n = 3; n <= 16; ++n) {
    for (int k = 2; k < n; ++k) {
      const GadgetIdentities id = check_gadget_identities(build_gadgets(n, k));
      ASSERT_TRUE(id.u_selects_e1) << n << "," << k;
      ASSERT_TRUE(id.v_norms) << n << "," << k;
      ASSERT_TRUE(id.t_gram) << n << "," << k;
      ASSERT_TRUE(id.v_in_kernel) << n << "," << k;
      ASSERT_TRUE(id.w_inverts_v) << n << "," << k;
    }
  }
}

TEST(Gadgets, RejectsBadSparsity) {
  EXPECT_THROW(build_gadgets(4, 1), std::invalid_argument);
  EXPECT_THROW(build_gadgets(4, 4), std::invalid_argument);
}

TEST(BuildZ, HandExample) {
  const std::vector<std::int64_t> z = {1, 0, -1};
  const IntMatrix Z = build_Z(z, 2);
  EXPECT_EQ(Z, (IntMatrix{{1, 0, 0}, {0, 0, -1}, {0, -1, 0}}));
  EXPECT_EQ(Z.apply(z), (std::vector<std::int64_t>{1, 1, 0}));
}

TEST(BuildZ, IdentityWhenAlreadyAligned) {
  EXPECT_EQ(build_Z({1, 1, 1, 0, 0}, 3), IntMatrix::identity(5));
}

TEST(BuildZ, RandomInvolutions) {
  RngStream rng(302);
  for (int i = 0; i < 1000; ++i) {
    const int n = 3 + static_cast<int>(rng.uniform_int(20));
    const int k = 2 + static_cast<int>(rng.uniform_int(n - 2));
    ASSERT_TRUE(check_Z_identities(random_sparse(n, k, rng), k));
  }
  EXPECT_THROW(build_Z({1, 2, 0}, 2), std::invalid_argument);
  EXPECT_THROW(build_Z({1, 0, 0}, 2), std::invalid_argument);
}

TEST(Phi, WitnessIdentityAndMarginals) {
  RngStream rng(303);
  const int n = 6, k = 2, m = 20000;
  const std::int64_t q = 17;
  const double sigma = 10.0;
  const GadgetSet g = build_gadgets(n, k);
  const IntMatrix B = uniform_matrix_mod(m, n - 1, q, rng);
  const PhiRandomness r = sample_phi_randomness(n, k, m, q, sigma, rng);
  const PhiOutput out = phi(B, q, g, r);
  const std::vector<std::int64_t> noise = phi_noise(g, r);
  const std::vector<std::int64_t> witness = phi_witness(out, r.z, q);
  for (int i = 0; i < m; ++i) ASSERT_EQ(mod_q(witness[i] - noise[i], q), 0) << "row " << i;

  std::vector<std::int64_t> entries;
  for (int i = 0; i < m; ++i) {
    for (std::int64_t x : out.X.row(i)) entries.push_back(x);
  }
  EXPECT_TRUE(chi2_uniform_modq(entries, q).pass);
  std::int64_t lo = 0;
  const std::vector<double> pmf = discrete_gaussian_pmf(2.0 * sigma * std::sqrt(k + 1.0), &lo);
  EXPECT_TRUE(chi2_pmf(noise, lo, pmf).pass);
}

TEST(Phi, DeterministicGivenRandomness) {
  RngStream rng(304);
  const GadgetSet g = build_gadgets(5, 3);
  const IntMatrix B = uniform_matrix_mod(30, 4, 31, rng);
  const PhiRandomness r = sample_phi_randomness(5, 3, 30, 31, 4.0, rng);
  const PhiOutput a = phi(B, 31, g, r);
  const PhiOutput b = phi(B, 31, g, r);
  EXPECT_EQ(a.X, b.X);
  EXPECT_EQ(a.x, b.x);
}

TEST(MatrixWitness, ProductIdentity) {
  RngStream rng(305);
  for (int ell : {1, 2, 3}) {
    const int n = 7, k = 3, m = 40;
    const std::int64_t q = 101;
    const GadgetSet g = build_gadgets(n, k);
    const MatrixLweInstance inst = sample_matrix_lwe(m, ell, n, q, 3.0, rng);
    const PhiRandomness r = sample_phi_randomness(n, k, m, q, 3.0, rng);
    const IntMatrix w = sample_invertible_mod_prime(ell + 1, q, rng);
    const MatrixLweWitness wit = check_matrix_lwe_witness(inst, q, g, r, w);
    EXPECT_TRUE(wit.decomposition_holds) << "ell " << ell;
    EXPECT_TRUE(wit.product_identity_holds) << "ell " << ell;
    EXPECT_EQ(wit.S_hat.rows(), static_cast<std::size_t>(m));
    EXPECT_EQ(wit.S_hat.cols(), static_cast<std::size_t>(ell + 1));
  }
}

TEST(Driver, UniformOracleGivesSparseLwe) {
  RngStream rng(306);
  const SparseReductionParams p{6, 2, 20000, 1, 17, 10.0, kDefaultSlack};
  const IntMatrix B = uniform_matrix_mod(p.m, p.n - 1, p.q, rng);
  const SparseReductionResult res = sparse_reduction_driver(B, p, rng);
  ASSERT_EQ(res.samples.size(), static_cast<std::size_t>(p.m));
  const std::vector<std::int64_t> z = res.transcript.at("z").get<std::vector<std::int64_t>>();
  int nonzero = 0;
  for (auto x : z) nonzero += x != 0;
  EXPECT_EQ(nonzero, p.k);
  std::vector<std::int64_t> res_b;
  std::vector<std::int64_t> a_entries;
  for (const Sample& s : res.samples.samples) {
    std::int64_t acc = std::llround(s.b);
    for (std::size_t i = 0; i < s.a.size(); ++i) {
      acc -= std::llround(s.a[i]) * z[i];
      a_entries.push_back(std::llround(s.a[i]));
    }
    res_b.push_back(centered_mod_q(acc, p.q));
  }
  EXPECT_TRUE(chi2_uniform_modq(a_entries, p.q).pass);
  // The residual is D_{ℤ,2σ√(k+1)} reduced mod q; compare against the folded pmf.
  std::int64_t lo = 0;
  const std::vector<double> pmf = discrete_gaussian_pmf(p.output_sigma(), &lo);
  std::vector<double> folded(p.q, 0.0);
  for (std::size_t i = 0; i < pmf.size(); ++i) folded[mod_q(lo + static_cast<std::int64_t>(i), p.q)] += pmf[i];
  std::vector<std::int64_t> shifted;
  for (auto x : res_b) shifted.push_back(mod_q(x, p.q));
  EXPECT_TRUE(chi2_pmf(shifted, 0, folded).pass);
  EXPECT_TRUE(res.transcript.contains("digests"));
  EXPECT_FALSE(res.warnings.empty());
}

TEST(Driver, OracleExhausted) {
  RngStream rng(307);
  const SparseReductionParams p{6, 2, 100, 1, 17, 10.0, kDefaultSlack};
  const IntMatrix B = uniform_matrix_mod(50, 5, 17, rng);
  EXPECT_THROW(sparse_reduction_driver(B, p, rng), std::runtime_error);
}

TEST(Lhl, HighEntropyWithinBound) {
  RngStream rng(308);
  const LhlReport r = lhl_check(1, 16, 4, 5, 2000, rng);
  EXPECT_NEAR(r.bound, oracle::kLhlBound, 1e-12);
  EXPECT_TRUE(r.within_bound);
  EXPECT_NEAR(r.tv_estimate, oracle::kLhlExactTv, 4.0 * r.std_error + 1e-12);
}

TEST(Lhl, LowEntropyIsVisible) {
  RngStream rng(309);
  const LhlReport r = lhl_check(3, 4, 1, 17, 50, rng);
  EXPECT_GT(r.tv_estimate, 0.1);
  EXPECT_DOUBLE_EQ(r.bound, 1.0);
}

TEST(Lhl, FixedSecretIsDistinguishable) {
  RngStream rng(310);
  const LhlReport r = lhl_check(1, 16, 4, 5, 200, rng, LhlSecretSource::kFixed);
  EXPECT_EQ(r.min_entropy, 0.0);
  // A point mass on ℤ_5 sits at TV 4/5 from uniform.
  EXPECT_NEAR(r.tv_estimate, 0.8, 1e-12);
}

TEST(Params, Warnings) {
  const SparseReductionParams p{6, 2, 100, 1, 17, 10.0, kDefaultSlack};
  EXPECT_NO_THROW(p.validate());
  EXPECT_NEAR(p.output_sigma(), 20.0 * std::sqrt(3.0), 1e-12);
  EXPECT_FALSE(p.hypothesis_warnings().empty());
  const SparseReductionParams bad{6, 6, 100, 1, 17, 10.0, kDefaultSlack};
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

}  // namespace
}  // namespace clwe
