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

#ifndef CLWE_SAMPLERS_H_
#define CLWE_SAMPLERS_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "clwe/numerics.h"
#include "clwe/rng.h"

namespace clwe {

enum class SecretKind {
  kFixedNorm,     // integer vector with ‖s‖₂ = r (entries ±1 on r² coordinates)
  kSparse,        // S_{n,k}
  kUnitSphere,    // uniform on S^{n-1}
  kScaledSparse,  // (1/√k)·S_{n,k}
  kScaledBinary,  // (1/√n)·{±1}ⁿ
};

std::string secret_kind_name(SecretKind kind);
SecretKind parse_secret_kind(const std::string& name);

struct SecretVector {
  std::vector<double> entries;
  SecretKind kind = SecretKind::kUnitSphere;
  double norm = 0.0;
  // Nonzero count for the sparse kinds; r² for kFixedNorm.
  int k = 0;

  std::size_t dim() const { return entries.size(); }
  // True when every entry is an integer (to 1e-9).
  bool is_integral() const;
  // Checks the invariant attached to `kind`; throws std::invalid_argument.
  void validate() const;
};

// Builds a secret from explicit entries, recomputing norm and k.
SecretVector make_secret(std::vector<double> entries, SecretKind kind);

// Counters for sampler edge cases. Owned by the caller.
struct SamplerStats {
  std::uint64_t draws = 0;
  // Draws whose truncated support held a single point.
  std::uint64_t degenerate_support = 0;
};

std::vector<double> sample_continuous_gaussian(const GaussianParam& g,
                                               RngStream& rng);
double sample_continuous_gaussian(double width, RngStream& rng);

// D_{ℤ+c, σ} truncated to the coset points within 12σ of the origin,
// sampled by inversion over a precomputed cumulative table. Reusable when
// (σ, c) stays fixed across draws.
class DiscreteGaussianSampler {
 public:
  DiscreteGaussianSampler(double sigma, double coset);

  double sample(RngStream& rng, SamplerStats* stats = nullptr) const;

  // Support points and their probabilities (normalized).
  const std::vector<double>& support() const { return support_; }
  std::vector<double> pmf() const;
  bool degenerate() const { return support_.size() == 1; }

 private:
  std::vector<double> support_;
  std::vector<double> cumulative_;
};

inline constexpr double kDiscreteGaussianTailCut = 12.0;

double sample_discrete_gaussian(double sigma, double coset, RngStream& rng,
                                SamplerStats* stats = nullptr);
std::int64_t sample_discrete_gaussian_int(double sigma, RngStream& rng,
                                          SamplerStats* stats = nullptr);

// Exact truncated pmf of D_{ℤ,σ} on [-⌊12σ⌋, ⌊12σ⌋]; index 0 is the minimum.
std::vector<double> discrete_gaussian_pmf(double sigma, std::int64_t* support_min);

std::vector<std::int64_t> sample_uniform_modq(std::int64_t q, std::size_t n,
                                              RngStream& rng);
std::vector<double> sample_uniform_torus(double q, std::size_t n, RngStream& rng);

SecretVector sample_sparse_secret(int n, int k, RngStream& rng);
SecretVector sample_scaled_sparse_secret(int n, int k, RngStream& rng);
SecretVector sample_scaled_binary_secret(int n, RngStream& rng);
// Integer secret of squared norm r2: ±1 on r2 random coordinates.
SecretVector sample_fixed_norm_secret(int n, int r2, RngStream& rng);
// R·e₁ for a Haar-random rotation R.
SecretVector sample_sphere_secret(int n, RngStream& rng);

// Haar-random orthogonal matrix: QR of an iid Gaussian matrix with the signs
// of R's diagonal folded into Q.
Eigen::MatrixXd sample_rotation(int n, RngStream& rng);

}  // namespace clwe

#endif  // CLWE_SAMPLERS_H_
