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

#ifndef CLWE_GMM_H_
#define CLWE_GMM_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "clwe/distributions.h"
#include "clwe/numerics.h"
#include "clwe/rng.h"
#include "clwe/samplers.h"
#include "clwe/serialization.h"

namespace clwe {

struct RejectionResult {
  std::vector<std::vector<double>> points;
  std::size_t offered = 0;
  double acceptance_rate = 0.0;
};

// Keeps a with probability exp(-π b̄²/δ²), b̄ the centered representative of
// b. One uniform draw per sample decides.
RejectionResult clwe_to_hclwe(const ClweBatch& samples, double delta_r,
                              RngStream& rng);

// Noise width of the hCLWE produced from CLWE(γ, β): √(β² + δ²).
double hclwe_beta_after_rejection(double beta, double delta_r);

// E[exp(-π b̄²/δ²)] when b ∼ D_w mod 1 (w = √(γ² + β²) for planted CLWE);
// w <= 0 means b uniform. Composite Simpson quadrature.
double expected_acceptance_rate(double w, double delta_r);

// ⌈4γ√(ln m/π)⌉ + 1.
int g_for(double gamma, double m);

MixtureSpec package_gmm(const SecretVector& secret, double gamma, double beta, int g);

struct SolverParams {
  int n = 0;
  int k = 0;
  double gamma = 0.0;
  double beta = 0.0;
  double gamma_prime = 0.0;  // √(γ² + β²)
  double modulus_f = 0.0;    // γ/(⌈√k⌉·γ'²)
  int m = 0;                 // samples consulted
  double delta = 0.0;        // 1/(100m)
  double a_thresh = 0.0;     // √(ln(1/δ))
  double m_multiplier = 1.0;

  // Accepted interval half-width a·β/γ'.
  double half_width() const { return a_thresh * beta / gamma_prime; }
  Json to_json() const;
};

// m = ⌈multiplier · 5k log₂ n / log₂(1/(β√k))⌉ unless m_override > 0.
// Throws when β√k ≥ 1 or γ < 2√(k(ln n + ln m)).
SolverParams make_solver_params(int n, int k, double gamma, double beta,
                                int m_override = 0, double m_multiplier = 1.0);

struct CandidateScore {
  std::vector<double> secret;
  int passes = 0;
};

struct SolverResult {
  std::optional<SecretVector> secret;
  // Some passing candidate other than ±secret.
  bool ambiguous = false;
  std::size_t candidates = 0;
  std::size_t passing = 0;
  // histogram[c] = number of candidates passing exactly c of the m tests.
  std::vector<std::size_t> histogram;
  // Pass count of every candidate, in enumeration order.
  std::vector<int> pass_counts;
  std::vector<CandidateScore> top;
};

// Brute-force search: enumerate (1/√k)·S_{n,k} by support (lexicographic), then sign
// pattern (-1 before +1, first coordinate most significant), and accept s
// when ⟨aᵢ, s⟩ mod modulus_f, centered, lies in [-aβ/γ', aβ/γ'] for all of
// the first m samples. Returns the first accepted candidate.
SolverResult solve_sparse_hclwe(const std::vector<std::vector<double>>& samples,
                                const SolverParams& params, std::size_t top_count = 5);

// True when found equals ±expected coordinatewise (to 1e-9).
bool same_secret_up_to_sign(const SecretVector& found, const SecretVector& expected);

struct GmmExperimentParams {
  std::string preset;
  int ell = 0;
  double exponent = 0.0;  // α for "poly", δ for "subexp"
  std::int64_t n = 0;
  std::int64_t k = 0;
  std::int64_t q = 0;
  double sigma = 0.0;
  std::int64_t m = 0;
  double gamma = 0.0;
  double beta = 0.0;
  int g = 0;
  bool feasible = true;
  std::vector<std::string> warnings;

  Json to_json() const;
};

// preset "poly": n = ℓ^α, k = 4ℓ/(α-1); preset "subexp": n = 2^{ℓ^δ},
// k = 4ℓ^{1-δ} log₂ ℓ. Both use q = ℓ², σ = √ℓ. m defaults to
// max(ℓ, ⌈√q⌉); γ = √k·√(ln m + ln n + c_slack), β = σ√k/q.
GmmExperimentParams gmm_experiment_params(const std::string& preset, int ell,
                                          double exponent, std::int64_t m = 0,
                                          double c_slack = kDefaultSlack);

}  // namespace clwe

#endif  // CLWE_GMM_H_
