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

#include "clwe/samplers.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace clwe {

std::string secret_kind_name(SecretKind kind) {
  switch (kind) {
    case SecretKind::kFixedNorm: return "fixed-norm";
    case SecretKind::kSparse: return "sparse";
    case SecretKind::kUnitSphere: return "unit-sphere";
    case SecretKind::kScaledSparse: return "scaled-sparse";
    case SecretKind::kScaledBinary: return "scaled-binary";
  }
  return "unknown";
}

SecretKind parse_secret_kind(const std::string& name) {
  for (SecretKind kind :
       {SecretKind::kFixedNorm, SecretKind::kSparse, SecretKind::kUnitSphere,
        SecretKind::kScaledSparse, SecretKind::kScaledBinary}) {
    if (secret_kind_name(kind) == name) return kind;
  }
  throw std::invalid_argument("unknown secret kind: " + name);
}

bool SecretVector::is_integral() const {
  return std::all_of(entries.begin(), entries.end(), [](double x) {
    return std::abs(x - std::round(x)) <= 1e-9;
  });
}

void SecretVector::validate() const {
  if (entries.empty()) throw std::invalid_argument("secret: empty vector");
  double norm2 = 0.0;
  int nonzero = 0;
  for (double x : entries) {
    norm2 += x * x;
    if (x != 0.0) ++nonzero;
  }
  switch (kind) {
    case SecretKind::kSparse:
      for (double x : entries) {
        if (x != 0.0 && x != 1.0 && x != -1.0) {
          throw std::invalid_argument("secret: sparse entries must lie in {-1,0,1}");
        }
      }
      if (nonzero != k) throw std::invalid_argument("secret: wrong sparsity");
      break;
    case SecretKind::kFixedNorm:
      if (!is_integral()) throw std::invalid_argument("secret: fixed-norm needs integers");
      if (std::abs(norm2 - k) > 1e-9) {
        throw std::invalid_argument("secret: squared norm differs from r^2");
      }
      break;
    case SecretKind::kUnitSphere:
    case SecretKind::kScaledSparse:
    case SecretKind::kScaledBinary:
      if (std::abs(std::sqrt(norm2) - 1.0) > 1e-9) {
        throw std::invalid_argument("secret: expected unit norm");
      }
      break;
  }
}

SecretVector make_secret(std::vector<double> entries, SecretKind kind) {
  SecretVector s;
  s.kind = kind;
  double norm2 = 0.0;
  int nonzero = 0;
  for (double x : entries) {
    norm2 += x * x;
    if (x != 0.0) ++nonzero;
  }
  s.entries = std::move(entries);
  s.norm = std::sqrt(norm2);
  s.k = kind == SecretKind::kFixedNorm ? static_cast<int>(std::lround(norm2)) : nonzero;
  s.validate();
  return s;
}

std::vector<double> sample_continuous_gaussian(const GaussianParam& g,
                                               RngStream& rng) {
  const double sd = gaussian_stddev(g.width);
  std::vector<double> out(g.center.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = g.center[i] + sd * rng.normal();
  return out;
}

double sample_continuous_gaussian(double width, RngStream& rng) {
  return gaussian_stddev(width) * rng.normal();
}

DiscreteGaussianSampler::DiscreteGaussianSampler(double sigma, double coset) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("discrete gaussian: sigma must be positive");
  }
  if (!std::isfinite(coset)) throw std::invalid_argument("discrete gaussian: bad coset");
  const double frac = coset - std::floor(coset);
  const double cut = kDiscreteGaussianTailCut * sigma;
  const double lo = std::ceil(-cut - frac);
  const double hi = std::floor(cut - frac);
  for (double j = lo; j <= hi; j += 1.0) support_.push_back(j + frac);
  if (support_.empty()) {
    // Nothing within the cut: fall back to the coset point nearest 0.
    support_.push_back(frac <= 0.5 ? frac : frac - 1.0);
  }
  cumulative_.resize(support_.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < support_.size(); ++i) {
    acc += rho(support_[i], sigma);
    cumulative_[i] = acc;
  }
  if (!(acc > 0.0)) {
    // Every weight underflowed; keep the point nearest the origin.
    const auto nearest = std::min_element(
        support_.begin(), support_.end(),
        [](double a, double b) { return std::abs(a) < std::abs(b); });
    const double point = *nearest;
    support_.assign(1, point);
    cumulative_.assign(1, 1.0);
  }
}

double DiscreteGaussianSampler::sample(RngStream& rng, SamplerStats* stats) const {
  if (stats != nullptr) {
    ++stats->draws;
    if (degenerate()) ++stats->degenerate_support;
  }
  if (degenerate()) return support_.front();
  const double u = rng.uniform() * cumulative_.back();
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  const std::size_t idx =
      std::min<std::size_t>(it - cumulative_.begin(), support_.size() - 1);
  return support_[idx];
}

std::vector<double> DiscreteGaussianSampler::pmf() const {
  std::vector<double> p(support_.size());
  double prev = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    p[i] = (cumulative_[i] - prev) / cumulative_.back();
    prev = cumulative_[i];
  }
  return p;
}

double sample_discrete_gaussian(double sigma, double coset, RngStream& rng,
                                SamplerStats* stats) {
  return DiscreteGaussianSampler(sigma, coset).sample(rng, stats);
}

std::int64_t sample_discrete_gaussian_int(double sigma, RngStream& rng,
                                          SamplerStats* stats) {
  return static_cast<std::int64_t>(std::llround(sample_discrete_gaussian(sigma, 0.0, rng, stats)));
}

std::vector<double> discrete_gaussian_pmf(double sigma, std::int64_t* support_min) {
  const DiscreteGaussianSampler sampler(sigma, 0.0);
  if (support_min != nullptr) *support_min = std::llround(sampler.support().front());
  return sampler.pmf();
}

std::vector<std::int64_t> sample_uniform_modq(std::int64_t q, std::size_t n,
                                              RngStream& rng) {
  if (q < 2) throw std::invalid_argument("sample_uniform_modq: q must be >= 2");
  std::vector<std::int64_t> out(n);
  for (auto& x : out) x = static_cast<std::int64_t>(rng.uniform_int(q));
  return out;
}

std::vector<double> sample_uniform_torus(double q, std::size_t n, RngStream& rng) {
  if (!(q > 0.0)) throw std::invalid_argument("sample_uniform_torus: q must be > 0");
  std::vector<double> out(n);
  for (auto& x : out) x = mod_positive(rng.uniform() * q, q);
  return out;
}

namespace {

// k distinct indices from [0, n), uniformly, by a partial Fisher–Yates shuffle.
std::vector<int> sample_support(int n, int k, RngStream& rng) {
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  for (int i = 0; i < k; ++i) {
    const int j = i + static_cast<int>(rng.uniform_int(n - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(k);
  return idx;
}

std::vector<double> signed_support(int n, int k, RngStream& rng) {
  if (n < 1 || k < 1) throw std::invalid_argument("secret: need n, k >= 1");
  if (k > n) throw std::invalid_argument("secret: k > n");
  std::vector<double> entries(n, 0.0);
  for (int i : sample_support(n, k, rng)) {
    entries[i] = rng.uniform_int(2) == 0 ? -1.0 : 1.0;
  }
  return entries;
}

}  // namespace

SecretVector sample_sparse_secret(int n, int k, RngStream& rng) {
  return make_secret(signed_support(n, k, rng), SecretKind::kSparse);
}

SecretVector sample_scaled_sparse_secret(int n, int k, RngStream& rng) {
  std::vector<double> entries = signed_support(n, k, rng);
  const double scale = 1.0 / std::sqrt(static_cast<double>(k));
  for (double& x : entries) x *= scale;
  return make_secret(std::move(entries), SecretKind::kScaledSparse);
}

SecretVector sample_scaled_binary_secret(int n, RngStream& rng) {
  std::vector<double> entries = signed_support(n, n, rng);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (double& x : entries) x *= scale;
  return make_secret(std::move(entries), SecretKind::kScaledBinary);
}

SecretVector sample_fixed_norm_secret(int n, int r2, RngStream& rng) {
  if (r2 < 1 || r2 > n) {
    throw std::invalid_argument("fixed-norm secret: need 1 <= r^2 <= n");
  }
  return make_secret(signed_support(n, r2, rng), SecretKind::kFixedNorm);
}

SecretVector sample_sphere_secret(int n, RngStream& rng) {
  const Eigen::MatrixXd r = sample_rotation(n, rng);
  std::vector<double> entries(n);
  double norm2 = 0.0;
  for (int i = 0; i < n; ++i) {
    entries[i] = r(i, 0);
    norm2 += entries[i] * entries[i];
  }
  // Re-normalize the last few ulps away so the unit-norm check is tight.
  const double norm = std::sqrt(norm2);
  for (double& x : entries) x /= norm;
  return make_secret(std::move(entries), SecretKind::kUnitSphere);
}

Eigen::MatrixXd sample_rotation(int n, RngStream& rng) {
  if (n < 1) throw std::invalid_argument("sample_rotation: n must be >= 1");
  Eigen::MatrixXd g(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) g(i, j) = rng.normal();
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd& r = qr.matrixQR();
  for (int j = 0; j < n; ++j) {
    if (r(j, j) < 0) q.col(j) *= -1.0;
  }
  return q;
}

}  // namespace clwe
