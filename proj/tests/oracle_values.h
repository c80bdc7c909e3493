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

#ifndef CLWE_TESTS_ORACLE_VALUES_H_
#define CLWE_TESTS_ORACLE_VALUES_H_

// Reference values computed independently by tests/oracles/frozen_values.py
// (Python, SciPy quadrature and direct enumeration) and frozen here.

namespace clwe::oracle {

inline constexpr double kRhoE1 = 0.04321391826377226;
inline constexpr double kSmoothing1 = 3.007666804394896;
inline constexpr double kSmoothing2Half = 0.8893651403508926;
inline constexpr double kMinEntropy41 = 3.0;

// Fixed-norm plan, n = 8, q = 2^20, r = √2, σ = 16, c = 4.
struct PlanValues {
  double sigma2, sigma3, tau, gamma, beta;
};
inline constexpr PlanValues kPlanM100 = {16.685942608793557, 21.696628582385216,
                                         3.2687324343953157, 4.622685740490679,
                                         2.0691517431626526e-05};
inline constexpr PlanValues kPlanM10000 = {17.22908475479486, 23.9177222145779,
                                           3.910215072557521, 5.529879187406542,
                                           2.280971738298216e-05};
inline constexpr double kThreeRTauM10000 = 16.58963756221963;

inline constexpr int kGForGamma2M100 = 11;
inline constexpr double kTvD1D11 = 0.04608966450266966;

// LHL: E_A[TV(As, U)] with s ∼ S_{16,4}, q = 5, ℓ = 1, by exact enumeration.
inline constexpr double kLhlExactTv = 0.003371399931494408;
inline constexpr double kLhlBound = 0.013103560459023979;

// Acceptance probability of the CLWE → hCLWE rejection step, δ = 0.05.
inline constexpr double kAcceptPlanted = 0.05000034329913003;  // b ∼ D_{√(γ²+β²)}, γ = 2, β = 0.05
inline constexpr double kAcceptUniform = 0.04999999999999999;

// Truncated hCLWE projection density, γ = 2, β = 0.05, g = 11.
inline constexpr double kMixtureDensityAt05 = 9.118699452828318;
inline constexpr double kMixtureDensityAt01 = 2.8665634907952964e-21;

inline constexpr double kDiscreteGaussianVariance3 = 1.4323944877419192;

inline constexpr double kWilson50Lo = 0.4038315303659956;
inline constexpr double kWilson50Hi = 0.5961684696340044;
inline constexpr double kWilson0Hi = 0.03699349820698568;

// Solver, n = 32, k = 2, log2(1/(β√k)) = 8.
inline constexpr double kSolverBeta = 0.002762135864009951;
inline constexpr int kSolverM = 7;
inline constexpr double kSolverGamma = 6.579754434235393;
inline constexpr double kSolverModulus = 0.07599066452773669;
inline constexpr double kSolverHalfWidth = 0.001074463769266468;

// GMM poly preset, ℓ = 16, α = 2, c = 4.
inline constexpr double kGmmPolyGamma = 28.077340234965952;
inline constexpr int kGmmPolyG = 107;

}  // namespace clwe::oracle

#endif  // CLWE_TESTS_ORACLE_VALUES_H_
