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

#include "clwe/gmm.h"

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "clwe/distributions.h"
#include "clwe/numerics.h"
#include "clwe/rng.h"
#include "clwe/samplers.h"
#include "oracle_values.h"

namespace clwe {
namespace {

TEST(GFor, FormulaValue) {
  EXPECT_EQ(g_for(2.0, 100.0), oracle::kGForGamma2M100);
  EXPECT_EQ(g_for(0.0, 100.0), 1);
  EXPECT_THROW(g_for(2.0, 1.0), std::invalid_argument);
}

TEST(GFor, MonotoneInBothArguments) {
  int prev_gamma = 0;
  for (double gamma = 0.0; gamma < 10.0; gamma += 0.25) {
    const int g = g_for(gamma, 1000.0);
    EXPECT_GE(g, prev_gamma);
    prev_gamma = g;
  }
  int prev_m = 0;
  for (double m = 2.0; m < 1e7; m *= 1.7) {
    const int g = g_for(3.0, m);
    EXPECT_GE(g, prev_m);
    prev_m = g;
  }
}

TEST(PackageGmm, WeightsAndLayout) {
  const SecretVector s = make_secret({0.0, 1.0, 0.0}, SecretKind::kUnitSphere);
  const MixtureSpec spec = package_gmm(s, 2.0, 0.05, 11);
  EXPECT_EQ(spec.components(), 11);
  double total = 0.0;
  for (double w : spec.weights) total += w;
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(Rejection, BetaAfterRejection) {
  EXPECT_NEAR(hclwe_beta_after_rejection(0.05, 0.05), 0.05 * std::sqrt(2.0), 1e-15);
}

TEST(Rejection, QuadratureMatchesOracle) {
  EXPECT_NEAR(expected_acceptance_rate(std::sqrt(4.0025), 0.05), oracle::kAcceptPlanted, 1e-9);
  EXPECT_NEAR(expected_acceptance_rate(0.0, 0.05), oracle::kAcceptUniform, 1e-9);
}

TEST(Rejection, ZeroBAlwaysAccepted) {
  RngStream rng(401);
  ClweBatch batch;
  batch.dim = 2;
  for (int i = 0; i < 1000; ++i) batch.samples.push_back(Sample{{0.1 * i, 0.2}, 0.0});
  const RejectionResult r = clwe_to_hclwe(batch, 0.05, rng);
  EXPECT_EQ(r.points.size(), 1000u);
  EXPECT_DOUBLE_EQ(r.acceptance_rate, 1.0);
}

TEST(Rejection, NullRateMatchesQuadrature) {
  RngStream rng(402);
  for (double delta : {0.05, 0.1, 0.2}) {
    const ClweBatch null_batch = ClweBatch::from(gen_null(NullRegime::kClwe, 3, 100000, 1.0, rng));
    const RejectionResult r = clwe_to_hclwe(null_batch, delta, rng);
    const double expect = expected_acceptance_rate(0.0, delta);
    EXPECT_NEAR(r.acceptance_rate, expect, 0.2 * expect) << "delta " << delta;
    EXPECT_NEAR(expect, delta, 1e-3);
  }
}

TEST(Rejection, PreconditionOnDelta) {
  RngStream rng(403);
  ClweBatch empty;
  EXPECT_THROW(clwe_to_hclwe(empty, 0.0, rng), std::invalid_argument);
  EXPECT_THROW(clwe_to_hclwe(empty, 0.25, rng), std::invalid_argument);
}

TEST(Rejection, DecisionIsFunctionOfOneUniform) {
  const SecretVector w = make_secret({1.0, 0.0}, SecretKind::kUnitSphere);
  RngStream gen(404);
  const ClweBatch batch = gen_clwe(ClweParams{2, 1, 2.0, 0.05, w.kind}, w, 5000, gen);
  RngStream a(405);
  RngStream b(405);
  const RejectionResult ra = clwe_to_hclwe(batch, 0.05, a);
  // Replay: sample i is kept iff the i-th uniform lies below ρ_δ(b̄ᵢ).
  std::size_t kept = 0;
  for (const Sample& s : batch.samples) kept += b.uniform() < rho(centered_mod(s.b, 1.0), 0.05);
  EXPECT_EQ(ra.points.size(), kept);
  EXPECT_EQ(a.position(), b.position());
}

TEST(SolverParams, FormulaValues) {
  const SolverParams p = make_solver_params(32, 2, oracle::kSolverGamma, oracle::kSolverBeta);
  EXPECT_EQ(p.m, oracle::kSolverM);
  EXPECT_NEAR(p.modulus_f, oracle::kSolverModulus, 1e-12);
  EXPECT_NEAR(p.half_width(), oracle::kSolverHalfWidth, 1e-12);
  EXPECT_NEAR(p.delta, 1.0 / 700.0, 1e-15);
}

TEST(SolverParams, Guards) {
  EXPECT_THROW(make_solver_params(32, 2, 6.5, 0.8), std::invalid_argument);
  EXPECT_THROW(make_solver_params(32, 2, 1.0, oracle::kSolverBeta), std::invalid_argument);
  EXPECT_THROW(make_solver_params(32, 40, 10.0, 0.01), std::invalid_argument);
  const SolverParams p = make_solver_params(32, 2, oracle::kSolverGamma, oracle::kSolverBeta);
  std::vector<std::vector<double>> few(3, std::vector<double>(32, 0.0));
  EXPECT_THROW(solve_sparse_hclwe(few, p), std::invalid_argument);
  SolverParams zero = p;
  zero.m = 0;
  EXPECT_THROW(solve_sparse_hclwe(few, zero), std::invalid_argument);
}

TEST(SolverParams, MultiplierScalesM) {
  const SolverParams p = make_solver_params(32, 2, 8.0, oracle::kSolverBeta, 0, 3.0);
  EXPECT_EQ(p.m, static_cast<int>(std::ceil(3.0 * 6.25)));
}

// Comfortably above the 2√(k(ln n + ln m)) floor at n = 16, k = 2, m = 8.
const double kGamma16 = 1.05 * 2.0 * std::sqrt(2.0 * (std::log(16.0) + std::log(8.0)));

std::vector<std::vector<double>> planted_points(const SecretVector& s, const SolverParams& p,
                                                RngStream& rng) {
  const MixtureSpec spec =
      package_gmm(s, p.gamma, p.beta, g_for(p.gamma, std::max(2, p.m)));
  return gen_trunc_hclwe(spec, p.m, rng);
}

TEST(Solver, RecoversPlantedSecret) {
  RngStream rng(406);
  const SolverParams p = make_solver_params(16, 2, kGamma16, oracle::kSolverBeta, 8);
  int hits = 0;
  for (int t = 0; t < 10; ++t) {
    const SecretVector s = sample_scaled_sparse_secret(16, 2, rng);
    const SolverResult r = solve_sparse_hclwe(planted_points(s, p, rng), p);
    ASSERT_EQ(r.candidates, 120u * 4u);
    ASSERT_EQ(r.pass_counts.size(), r.candidates);
    if (r.secret && same_secret_up_to_sign(*r.secret, s) && !r.ambiguous) ++hits;
  }
  EXPECT_GE(hits, 9);
}

TEST(Solver, NullGivesNone) {
  RngStream rng(407);
  const SolverParams p = make_solver_params(16, 2, kGamma16, oracle::kSolverBeta, 8);
  int nones = 0;
  for (int t = 0; t < 10; ++t) {
    std::vector<std::vector<double>> pts(p.m);
    for (auto& x : pts) x = sample_continuous_gaussian(GaussianParam::Centered(1.0, 16), rng);
    nones += !solve_sparse_hclwe(pts, p).secret.has_value();
  }
  EXPECT_GE(nones, 9);
}

TEST(Solver, DeterministicAndOrdered) {
  RngStream rng(408);
  const SolverParams p = make_solver_params(8, 2, 6.0, oracle::kSolverBeta, 6);
  const SecretVector s = sample_scaled_sparse_secret(8, 2, rng);
  const auto pts = planted_points(s, p, rng);
  const SolverResult a = solve_sparse_hclwe(pts, p);
  const SolverResult b = solve_sparse_hclwe(pts, p);
  EXPECT_EQ(a.pass_counts, b.pass_counts);
  ASSERT_TRUE(a.secret.has_value());
  // The first passer under (-1 before +1) ordering has a negative first nonzero.
  for (double x : a.secret->entries) {
    if (x != 0.0) {
      EXPECT_LT(x, 0.0);
      break;
    }
  }
  std::size_t total = 0;
  for (std::size_t c : a.histogram) total += c;
  EXPECT_EQ(total, a.candidates);
  ASSERT_FALSE(a.top.empty());
  EXPECT_EQ(a.top.front().passes, p.m);
}

TEST(GmmParams, PolyPreset) {
  const GmmExperimentParams p = gmm_experiment_params("poly", 16, 2.0);
  EXPECT_EQ(p.n, 256);
  EXPECT_EQ(p.k, 64);
  EXPECT_EQ(p.q, 256);
  EXPECT_DOUBLE_EQ(p.sigma, 4.0);
  EXPECT_EQ(p.m, 16);
  EXPECT_NEAR(p.gamma, oracle::kGmmPolyGamma, 1e-12);
  EXPECT_EQ(p.g, oracle::kGmmPolyG);
  EXPECT_TRUE(p.feasible);
}

TEST(GmmParams, SubexpPresetInfeasibleAtDeskScale) {
  const GmmExperimentParams p = gmm_experiment_params("subexp", 16, 0.5);
  EXPECT_EQ(p.n, 16);
  EXPECT_EQ(p.k, 64);
  EXPECT_FALSE(p.feasible);
  EXPECT_FALSE(p.warnings.empty());
}

TEST(GmmParams, UnknownPreset) {
  EXPECT_THROW(gmm_experiment_params("linear", 16, 2.0), std::invalid_argument);
  EXPECT_THROW(gmm_experiment_params("poly", 16, 1.0), std::invalid_argument);
}

}  // namespace
}  // namespace clwe
