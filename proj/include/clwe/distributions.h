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

#ifndef CLWE_DISTRIBUTIONS_H_
#define CLWE_DISTRIBUTIONS_H_

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "clwe/numerics.h"
#include "clwe/rng.h"
#include "clwe/samplers.h"

namespace clwe {

// Where the a-part of a sample lives: ℤ_qⁿ, T_qⁿ = [0,q)ⁿ, or ℝⁿ (Gaussian).
enum class ADomain { kZq, kTq, kGaussian };
// Where b lives: ℤ_q or T_q. CLWE uses T_1.
enum class BDomain { kZq, kTq };

std::string a_domain_name(ADomain d);
std::string b_domain_name(BDomain d);
ADomain parse_a_domain(const std::string& name);
BDomain parse_b_domain(const std::string& name);

struct Sample {
  std::vector<double> a;
  double b = 0.0;
};

// Untyped sample container, as read from or written to disk.
struct SampleBatch {
  ADomain a_domain = ADomain::kGaussian;
  BDomain b_domain = BDomain::kTq;
  double modulus = 1.0;
  std::size_t dim = 0;
  std::vector<Sample> samples;

  // Checks dimensions and that every coordinate sits in its declared domain.
  void validate() const;
};

// Compile-time tagged batch. Pipeline steps take and return these, so feeding
// a step the wrong regime does not compile; conversion from SampleBatch checks
// the tags at run time.
template <ADomain A, BDomain B>
struct TypedBatch {
  static constexpr ADomain kA = A;
  static constexpr BDomain kB = B;

  double modulus = 1.0;
  std::size_t dim = 0;
  std::vector<Sample> samples;

  static TypedBatch from(SampleBatch batch) {
    if (batch.a_domain != A || batch.b_domain != B) {
      throw std::invalid_argument("sample batch has regime (" +
                                  a_domain_name(batch.a_domain) + ", " +
                                  b_domain_name(batch.b_domain) + "), expected (" +
                                  a_domain_name(A) + ", " + b_domain_name(B) + ")");
    }
    batch.validate();
    return TypedBatch{batch.modulus, batch.dim, std::move(batch.samples)};
  }
  SampleBatch erase() const { return SampleBatch{A, B, modulus, dim, samples}; }
  std::size_t size() const { return samples.size(); }
};

using DiscreteLweBatch = TypedBatch<ADomain::kZq, BDomain::kZq>;
using ContinuousErrorLweBatch = TypedBatch<ADomain::kZq, BDomain::kTq>;
using TorusLweBatch = TypedBatch<ADomain::kTq, BDomain::kTq>;
using ClweBatch = TypedBatch<ADomain::kGaussian, BDomain::kTq>;

enum class ErrorRegime { kDiscrete, kContinuous };
enum class SampleRegime { kDiscrete, kContinuous, kGaussian };

struct LweParams {
  int n = 1;
  int m = 1;
  std::int64_t q = 2;
  double sigma = 1.0;
  SecretKind secret_kind = SecretKind::kFixedNorm;
  ErrorRegime error_regime = ErrorRegime::kDiscrete;
  SampleRegime sample_regime = SampleRegime::kDiscrete;
  // Width of a ∼ D_w^n when sample_regime is kGaussian.
  double gaussian_width = 1.0;

  void validate() const;
};

struct ClweParams {
  int n = 1;
  int m = 1;
  double gamma = 1.0;
  double beta = 0.1;
  SecretKind secret_kind = SecretKind::kUnitSphere;

  void validate() const;
};

// (aᵢ, ⟨aᵢ, s⟩ + eᵢ mod q). Discrete b only when a, e and s are all integral.
SampleBatch gen_lwe(const LweParams& params, const SecretVector& secret,
                    std::size_t count, RngStream& rng);

// a ∼ D₁ⁿ, b = γ⟨a, w⟩ + e mod 1 with e ∼ D_β.
ClweBatch gen_clwe(const ClweParams& params, const SecretVector& secret,
                   std::size_t count, RngStream& rng);

enum class NullRegime { kDiscreteLwe, kContinuousErrorLwe, kTorusLwe, kClwe };
std::string null_regime_name(NullRegime r);
NullRegime parse_null_regime(const std::string& name);

// Same a-marginal as the planted regime; b uniform on the matching ℤ_q / T_q.
SampleBatch gen_null(NullRegime regime, int n, std::size_t count, double q,
                     RngStream& rng);

// Centered residual b - ⟨a, s⟩·scale mod modulus, in [-modulus/2, modulus/2).
double residual(const Sample& sample, const SecretVector& secret, double scale,
                double modulus);
std::vector<double> residuals(const SampleBatch& batch, const SecretVector& secret,
                              double scale);

// The truncated hCLWE mixture: components j ∈ [index_lo, index_hi], weights
// ∝ ρ_{γ'}(j), along-secret means γj/γ'² and width β/γ', width 1 elsewhere,
// γ' = √(β² + γ²).
struct MixtureSpec {
  std::vector<double> secret_direction;
  double gamma = 1.0;
  double beta = 0.1;
  int index_lo = 0;
  int index_hi = 0;
  std::vector<double> weights;
  std::vector<double> means;
  double along_width = 0.1;
  double orthogonal_width = 1.0;

  int components() const { return index_hi - index_lo + 1; }
  void validate() const;
};

// Builds the spec with the index range [-⌊g/2⌋, ⌊(g-1)/2⌋].
MixtureSpec make_mixture_spec(const SecretVector& secret, double gamma,
                              double beta, int g);

std::vector<std::vector<double>> gen_trunc_hclwe(const MixtureSpec& spec,
                                                 std::size_t count, RngStream& rng);

// Both sides of the pancake identity
//   ρ(x)·Σ_j ρ_β(j - γ⟨s,x⟩) = Σ_j ρ_{γ'}(j)·ρ(π⊥x)·ρ_{β/γ'}(⟨s,x⟩ - γj/γ'²),
// each ℤ-sum truncated once terms drop below 1e-30 of the running maximum.
struct HclweDensityPair {
  double lhs = 0.0;
  double rhs = 0.0;
};
HclweDensityPair hclwe_density(std::span<const double> x,
                               std::span<const double> secret, double gamma,
                               double beta);
HclweDensityPair hclwe_density(std::span<const double> x, const MixtureSpec& spec);

// Normalized density of the truncated mixture at x.
double mixture_density(std::span<const double> x, const MixtureSpec& spec);
// Density and cdf of the projection ⟨s, x⟩ under the truncated mixture.
double mixture_projection_density(double t, const MixtureSpec& spec);
Cdf mixture_projection_cdf(const MixtureSpec& spec);

}  // namespace clwe

#endif  // CLWE_DISTRIBUTIONS_H_
