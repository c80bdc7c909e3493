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

#ifndef CLWE_REDUCE_CLWE_H_
#define CLWE_REDUCE_CLWE_H_

#include <cstdint>
#include <optional>

#include <Eigen/Dense>

#include "clwe/distributions.h"
#include "clwe/numerics.h"
#include "clwe/rng.h"
#include "clwe/samplers.h"
#include "clwe/serialization.h"

namespace clwe {

// Constants of the fixed-norm LWE → CLWE pipeline, with every asymptotic
// slack term replaced by c_slack.
struct PipelinePlan {
  int n = 0;
  std::int64_t m = 0;
  std::int64_t q = 0;
  double r = 0.0;
  double sigma = 0.0;
  double c_slack = kDefaultSlack;

  double sigma2 = 0.0;  // after step 1: √(σ² + 4 ln m + c)
  double sigma3 = 0.0;  // after step 2: √(σ₂² + 9r²(ln n + ln m + c))
  double tau = 0.0;     // √(ln n + ln m + c)
  double gamma = 0.0;   // r·τ
  double beta = 0.0;    // σ₃/q

  // Width of the continuous noise added to b in step 1.
  double step1_width() const;
  // Width of the continuous noise added to each a-coordinate in step 2.
  double step2_width() const;

  Json to_json() const;
  static PipelinePlan from_json(const Json& j);
};

// Throws std::invalid_argument naming the violated inequality when
//   σ > √(4 ln m + c)   (step 1 needs a positive-width top-up), or
//   σ₂ ≥ 3r·τ           (step 2 smoothing condition).
PipelinePlan plan(int n, std::int64_t m, std::int64_t q, double r, double sigma,
                  double c_slack = kDefaultSlack);

// b ↦ b + D_{√(4 ln m + c)} mod q. The a-part passes through untouched.
ContinuousErrorLweBatch step1_errors(const DiscreteLweBatch& in,
                                     const PipelinePlan& plan, RngStream& rng);

// a ↦ a + D_{3τ}ⁿ mod q. The b-part passes through untouched.
TorusLweBatch step2_samples(const ContinuousErrorLweBatch& in,
                            const PipelinePlan& plan, RngStream& rng);

// yᵢ ∼ D_{ℤ + aᵢ/q, τ}; output (y/τ, b/q). The secret becomes s/r.
ClweBatch step3_gaussianize(const TorusLweBatch& in, const PipelinePlan& plan,
                            RngStream& rng);
SecretVector step3_secret(const SecretVector& s, const PipelinePlan& plan);

struct RotatedClwe {
  ClweBatch samples;
  std::optional<SecretVector> secret;
  Eigen::MatrixXd rotation;
};

// One Haar rotation R for the whole batch: a ↦ Ra, w ↦ Rw.
RotatedClwe step4_rotate(const ClweBatch& in, const SecretVector* secret,
                         RngStream& rng);

// Steps 1-4. `secret`, when given, is tracked through to the output.
RotatedClwe run_pipeline(const DiscreteLweBatch& in, const PipelinePlan& plan,
                         RngStream& rng, const SecretVector* secret = nullptr);

// (a, b) ↦ (a·τ·q mod q, b·q mod q) for CLWE with secret S/r, γ = rτ.
TorusLweBatch reverse_scale(const ClweBatch& in, std::int64_t q, double tau);
// r·w; throws unless the result is integral (to 1e-9).
SecretVector reverse_secret(const SecretVector& w, double r);

// a ↦ a + a′ mod q with a′ ∼ D_{ℤⁿ − a, τ}, which lands on ℤ_qⁿ exactly.
ContinuousErrorLweBatch reverse_discretize(const TorusLweBatch& in, double tau,
                                           RngStream& rng);

}  // namespace clwe

#endif  // CLWE_REDUCE_CLWE_H_
