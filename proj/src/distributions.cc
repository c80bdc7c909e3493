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

#include "clwe/distributions.h"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace clwe {

std::string a_domain_name(ADomain d) {
  switch (d) {
    case ADomain::kZq: return "zq";
    case ADomain::kTq: return "tq";
    case ADomain::kGaussian: return "gaussian";
  }
  return "unknown";
}

std::string b_domain_name(BDomain d) {
  return d == BDomain::kZq ? "zq" : "tq";
}

ADomain parse_a_domain(const std::string& name) {
  for (ADomain d : {ADomain::kZq, ADomain::kTq, ADomain::kGaussian}) {
    if (a_domain_name(d) == name) return d;
  }
  throw std::invalid_argument("unknown a-domain: " + name);
}

BDomain parse_b_domain(const std::string& name) {
  if (name == "zq") return BDomain::kZq;
  if (name == "tq") return BDomain::kTq;
  throw std::invalid_argument("unknown b-domain: " + name);
}

namespace {

bool is_integer(double x) { return x == std::floor(x); }

void check_residue(double x, double q, bool integral, const char* what) {
  if (!(x >= 0.0 && x < q)) {
    throw std::invalid_argument(std::string(what) + " outside [0, q)");
  }
  if (integral && !is_integer(x)) {
    throw std::invalid_argument(std::string(what) + " is not an integer residue");
  }
}

}  // namespace

void SampleBatch::validate() const {
  if (!(modulus > 0.0)) throw std::invalid_argument("batch: modulus must be > 0");
  if ((a_domain == ADomain::kZq || b_domain == BDomain::kZq) &&
      (modulus < 2.0 || !is_integer(modulus))) {
    throw std::invalid_argument("batch: discrete regimes need an integer q >= 2");
  }
  for (const Sample& s : samples) {
    if (s.a.size() != dim) throw std::invalid_argument("batch: dimension mismatch");
    for (double x : s.a) {
      if (a_domain == ADomain::kGaussian) {
        if (!std::isfinite(x)) throw std::invalid_argument("batch: non-finite a");
      } else {
        check_residue(x, modulus, a_domain == ADomain::kZq, "a coordinate");
      }
    }
    check_residue(s.b, modulus, b_domain == BDomain::kZq, "b");
  }
}

void LweParams::validate() const {
  if (n < 1 || m < 1) throw std::invalid_argument("lwe params: need n, m >= 1");
  if (!(sigma > 0.0)) throw std::invalid_argument("lwe params: sigma must be > 0");
  const bool discrete = sample_regime == SampleRegime::kDiscrete ||
                        error_regime == ErrorRegime::kDiscrete;
  if (discrete && q < 2) throw std::invalid_argument("lwe params: q must be >= 2");
  if (q < 1) throw std::invalid_argument("lwe params: q must be >= 1");
  if (!(gaussian_width > 0.0)) {
    throw std::invalid_argument("lwe params: gaussian width must be > 0");
  }
}

void ClweParams::validate() const {
  if (n < 1 || m < 1) throw std::invalid_argument("clwe params: need n, m >= 1");
  if (!(gamma >= 0.0)) throw std::invalid_argument("clwe params: gamma must be >= 0");
  if (!(beta > 0.0)) throw std::invalid_argument("clwe params: beta must be > 0");
}

SampleBatch gen_lwe(const LweParams& params, const SecretVector& secret,
                    std::size_t count, RngStream& rng) {
  params.validate();
  if (secret.kind != params.secret_kind) {
    throw std::invalid_argument("gen_lwe: secret kind does not match params");
  }
  if (secret.dim() != static_cast<std::size_t>(params.n)) {
    throw std::invalid_argument("gen_lwe: secret dimension differs from n");
  }
  const bool discrete_b = params.sample_regime == SampleRegime::kDiscrete &&
                          params.error_regime == ErrorRegime::kDiscrete;
  if (discrete_b && !secret.is_integral()) {
    throw std::invalid_argument(
        "gen_lwe: discrete samples and errors need an integral secret");
  }
  const double q = static_cast<double>(params.q);
  SampleBatch batch;
  batch.modulus = q;
  batch.dim = params.n;
  batch.a_domain = params.sample_regime == SampleRegime::kDiscrete ? ADomain::kZq
                   : params.sample_regime == SampleRegime::kContinuous
                       ? ADomain::kTq
                       : ADomain::kGaussian;
  batch.b_domain = discrete_b ? BDomain::kZq : BDomain::kTq;
  batch.samples.reserve(count);
  const DiscreteGaussianSampler error_sampler(params.sigma, 0.0);
  for (std::size_t i = 0; i < count; ++i) {
    Sample s;
    s.a.resize(params.n);
    for (double& x : s.a) {
      switch (params.sample_regime) {
        case SampleRegime::kDiscrete:
          x = static_cast<double>(rng.uniform_int(params.q));
          break;
        case SampleRegime::kContinuous:
          x = mod_positive(rng.uniform() * q, q);
          break;
        case SampleRegime::kGaussian:
          x = sample_continuous_gaussian(params.gaussian_width, rng);
          break;
      }
    }
    const double e = params.error_regime == ErrorRegime::kDiscrete
                         ? error_sampler.sample(rng)
                         : sample_continuous_gaussian(params.sigma, rng);
    if (discrete_b) {
      std::int64_t acc = static_cast<std::int64_t>(e);
      for (int j = 0; j < params.n; ++j) {
        acc += static_cast<std::int64_t>(s.a[j]) *
               static_cast<std::int64_t>(std::llround(secret.entries[j]));
        acc = mod_q(acc, params.q);
      }
      s.b = static_cast<double>(mod_q(acc, params.q));
    } else {
      double acc = e;
      for (int j = 0; j < params.n; ++j) acc += s.a[j] * secret.entries[j];
      s.b = mod_positive(acc, q);
    }
    batch.samples.push_back(std::move(s));
  }
  return batch;
}

ClweBatch gen_clwe(const ClweParams& params, const SecretVector& secret,
                   std::size_t count, RngStream& rng) {
  params.validate();
  if (secret.dim() != static_cast<std::size_t>(params.n)) {
    throw std::invalid_argument("gen_clwe: secret dimension differs from n");
  }
  if (std::abs(secret.norm - 1.0) > 1e-9) {
    throw std::invalid_argument("gen_clwe: secret must have unit norm");
  }
  ClweBatch batch;
  batch.modulus = 1.0;
  batch.dim = params.n;
  batch.samples.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Sample s;
    s.a.resize(params.n);
    double dot = 0.0;
    for (int j = 0; j < params.n; ++j) {
      s.a[j] = sample_continuous_gaussian(1.0, rng);
      dot += s.a[j] * secret.entries[j];
    }
    s.b = mod_positive(params.gamma * dot + sample_continuous_gaussian(params.beta, rng), 1.0);
    batch.samples.push_back(std::move(s));
  }
  return batch;
}

std::string null_regime_name(NullRegime r) {
  switch (r) {
    case NullRegime::kDiscreteLwe: return "discrete-lwe";
    case NullRegime::kContinuousErrorLwe: return "continuous-error-lwe";
    case NullRegime::kTorusLwe: return "torus-lwe";
    case NullRegime::kClwe: return "clwe";
  }
  return "unknown";
}

NullRegime parse_null_regime(const std::string& name) {
  for (NullRegime r : {NullRegime::kDiscreteLwe, NullRegime::kContinuousErrorLwe,
                       NullRegime::kTorusLwe, NullRegime::kClwe}) {
    if (null_regime_name(r) == name) return r;
  }
  throw std::invalid_argument("unknown null regime: " + name);
}

SampleBatch gen_null(NullRegime regime, int n, std::size_t count, double q,
                     RngStream& rng) {
  if (n < 1) throw std::invalid_argument("gen_null: n must be >= 1");
  SampleBatch batch;
  batch.dim = n;
  switch (regime) {
    case NullRegime::kDiscreteLwe:
      batch.a_domain = ADomain::kZq;
      batch.b_domain = BDomain::kZq;
      break;
    case NullRegime::kContinuousErrorLwe:
      batch.a_domain = ADomain::kZq;
      batch.b_domain = BDomain::kTq;
      break;
    case NullRegime::kTorusLwe:
      batch.a_domain = ADomain::kTq;
      batch.b_domain = BDomain::kTq;
      break;
    case NullRegime::kClwe:
      batch.a_domain = ADomain::kGaussian;
      batch.b_domain = BDomain::kTq;
      q = 1.0;
      break;
  }
  batch.modulus = q;
  const bool discrete_q = batch.a_domain == ADomain::kZq || batch.b_domain == BDomain::kZq;
  if (discrete_q && (q < 2.0 || q != std::floor(q))) {
    throw std::invalid_argument("gen_null: discrete regimes need an integer q >= 2");
  }
  if (!(q > 0.0)) throw std::invalid_argument("gen_null: q must be > 0");
  const auto qi = static_cast<std::uint64_t>(q);
  batch.samples.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Sample s;
    s.a.resize(n);
    for (double& x : s.a) {
      switch (batch.a_domain) {
        case ADomain::kZq: x = static_cast<double>(rng.uniform_int(qi)); break;
        case ADomain::kTq: x = mod_positive(rng.uniform() * q, q); break;
        case ADomain::kGaussian: x = sample_continuous_gaussian(1.0, rng); break;
      }
    }
    s.b = batch.b_domain == BDomain::kZq ? static_cast<double>(rng.uniform_int(qi))
                                         : mod_positive(rng.uniform() * q, q);
    batch.samples.push_back(std::move(s));
  }
  return batch;
}

double residual(const Sample& sample, const SecretVector& secret, double scale,
                double modulus) {
  if (sample.a.size() != secret.dim()) {
    throw std::invalid_argument("residual: dimension mismatch");
  }
  double dot = 0.0;
  for (std::size_t j = 0; j < sample.a.size(); ++j) dot += sample.a[j] * secret.entries[j];
  return centered_mod(sample.b - scale * dot, modulus);
}

std::vector<double> residuals(const SampleBatch& batch, const SecretVector& secret,
                              double scale) {
  std::vector<double> out;
  out.reserve(batch.samples.size());
  for (const Sample& s : batch.samples) {
    out.push_back(residual(s, secret, scale, batch.modulus));
  }
  return out;
}

void MixtureSpec::validate() const {
  double norm2 = 0.0;
  for (double x : secret_direction) norm2 += x * x;
  if (secret_direction.empty() || std::abs(std::sqrt(norm2) - 1.0) > 1e-9) {
    throw std::invalid_argument("mixture: secret direction must be a unit vector");
  }
  if (index_hi < index_lo) throw std::invalid_argument("mixture: empty index range");
  const auto count = static_cast<std::size_t>(components());
  if (weights.size() != count || means.size() != count) {
    throw std::invalid_argument("mixture: weights/means size mismatch");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w > 0.0)) throw std::invalid_argument("mixture: weights must be positive");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("mixture: weights must sum to 1");
  }
  if (!(along_width > 0.0 && along_width < 1.0)) {
    throw std::invalid_argument("mixture: along-secret width must lie in (0, 1)");
  }
}

MixtureSpec make_mixture_spec(const SecretVector& secret, double gamma,
                              double beta, int g) {
  if (g < 1) throw std::invalid_argument("mixture: g must be >= 1");
  if (!(beta > 0.0) || !(gamma >= 0.0)) {
    throw std::invalid_argument("mixture: need beta > 0, gamma >= 0");
  }
  if (std::abs(secret.norm - 1.0) > 1e-9) {
    throw std::invalid_argument("mixture: secret must have unit norm");
  }
  MixtureSpec spec;
  spec.secret_direction = secret.entries;
  spec.gamma = gamma;
  spec.beta = beta;
  spec.index_lo = -(g / 2);
  spec.index_hi = (g - 1) / 2;
  const double gp2 = beta * beta + gamma * gamma;
  const double gp = std::sqrt(gp2);
  double total = 0.0;
  for (int j = spec.index_lo; j <= spec.index_hi; ++j) {
    const double w = rho(j, gp);
    spec.weights.push_back(w);
    spec.means.push_back(gamma * j / gp2);
    total += w;
  }
  for (double& w : spec.weights) w /= total;
  spec.along_width = beta / gp;
  spec.validate();
  return spec;
}

std::vector<std::vector<double>> gen_trunc_hclwe(const MixtureSpec& spec,
                                                 std::size_t count, RngStream& rng) {
  spec.validate();
  const std::size_t n = spec.secret_direction.size();
  std::vector<double> cumulative(spec.weights.size());
  std::partial_sum(spec.weights.begin(), spec.weights.end(), cumulative.begin());
  std::vector<std::vector<double>> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double u = rng.uniform() * cumulative.back();
    const std::size_t comp = std::min<std::size_t>(
        std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin(),
        cumulative.size() - 1);
    std::vector<double> x(n);
    double along = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      x[j] = sample_continuous_gaussian(spec.orthogonal_width, rng);
      along += x[j] * spec.secret_direction[j];
    }
    const double t = spec.means[comp] + sample_continuous_gaussian(spec.along_width, rng);
    for (std::size_t j = 0; j < n; ++j) x[j] += (t - along) * spec.secret_direction[j];
    out.push_back(std::move(x));
  }
  return out;
}

namespace {

constexpr double kSumCutoff = 1e-30;

// Sums f(j) over integers outward from `start` in both directions, stopping
// each direction once a term falls below kSumCutoff times the running max
// after the terms have started to decrease.
template <typename F>
double sum_over_integers(long start, F f) {
  double max_term = 0.0;
  double total = 0.0;
  for (int dir : {+1, -1}) {
    double prev = -1.0;
    for (long j = dir > 0 ? start : start - 1;; j += dir) {
      const double term = f(j);
      total += term;
      max_term = std::max(max_term, term);
      if (term <= prev && term < kSumCutoff * max_term) break;
      if (max_term == 0.0 && std::abs(j - start) > 10000) break;
      prev = term;
    }
  }
  return total;
}

}  // namespace

HclweDensityPair hclwe_density(std::span<const double> x,
                               std::span<const double> secret, double gamma,
                               double beta) {
  if (x.size() != secret.size()) {
    throw std::invalid_argument("hclwe_density: dimension mismatch");
  }
  double norm2 = 0.0;
  double t = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    norm2 += x[i] * x[i];
    t += x[i] * secret[i];
  }
  const double perp2 = std::max(0.0, norm2 - t * t);
  const double gp2 = beta * beta + gamma * gamma;
  const double gp = std::sqrt(gp2);
  const long start = std::lround(gamma * t);
  const double rho_x = std::exp(-kPi * norm2);
  const double rho_perp = std::exp(-kPi * perp2);
  HclweDensityPair out;
  out.lhs = rho_x * sum_over_integers(start, [&](long j) {
              return rho(static_cast<double>(j) - gamma * t, beta);
            });
  out.rhs = sum_over_integers(start, [&](long j) {
    const double jd = static_cast<double>(j);
    return rho(jd, gp) * rho_perp * rho(t - gamma * jd / gp2, beta / gp);
  });
  return out;
}

HclweDensityPair hclwe_density(std::span<const double> x, const MixtureSpec& spec) {
  return hclwe_density(x, spec.secret_direction, spec.gamma, spec.beta);
}

double mixture_projection_density(double t, const MixtureSpec& spec) {
  double total = 0.0;
  for (std::size_t j = 0; j < spec.weights.size(); ++j) {
    total += spec.weights[j] * rho(t, spec.along_width, spec.means[j]) / spec.along_width;
  }
  return total;
}

double mixture_density(std::span<const double> x, const MixtureSpec& spec) {
  if (x.size() != spec.secret_direction.size()) {
    throw std::invalid_argument("mixture_density: dimension mismatch");
  }
  double norm2 = 0.0;
  double t = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    norm2 += x[i] * x[i];
    t += x[i] * spec.secret_direction[i];
  }
  const double perp2 = std::max(0.0, norm2 - t * t);
  return std::exp(-kPi * perp2) * mixture_projection_density(t, spec);
}

Cdf mixture_projection_cdf(const MixtureSpec& spec) {
  std::vector<Cdf> parts;
  for (double mu : spec.means) parts.push_back(gaussian_cdf(spec.along_width, mu));
  return [parts, weights = spec.weights](double t) {
    double total = 0.0;
    for (std::size_t j = 0; j < parts.size(); ++j) total += weights[j] * parts[j](t);
    return std::min(1.0, total);
  };
}

}  // namespace clwe
