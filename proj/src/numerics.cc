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

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace clwe {

GaussianParam GaussianParam::Make(double width, std::vector<double> center) {
  if (!(width > 0.0) || !std::isfinite(width)) {
    throw std::invalid_argument("gaussian width must be positive and finite");
  }
  for (double c : center) {
    if (!std::isfinite(c)) {
      throw std::invalid_argument("gaussian center must be finite");
    }
  }
  return GaussianParam{width, std::move(center)};
}

GaussianParam GaussianParam::Centered(double width, std::size_t n) {
  return Make(width, std::vector<double>(n, 0.0));
}

double rho(std::span<const double> x, const GaussianParam& g) {
  if (x.size() != g.center.size()) {
    throw std::invalid_argument("rho: dimension mismatch");
  }
  double norm2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = (x[i] - g.center[i]) / g.width;
    norm2 += d * d;
  }
  return std::exp(-kPi * norm2);
}

double rho(double x, double width, double center) {
  const double d = (x - center) / width;
  return std::exp(-kPi * d * d);
}

double smoothing_bound(int n, double eps) {
  if (n < 1) throw std::invalid_argument("smoothing_bound: n must be >= 1");
  if (!(eps > 0.0 && eps < 1.0)) {
    throw std::invalid_argument("smoothing_bound: eps must lie in (0, 1)");
  }
  return std::sqrt(std::log(2.0 * n * (1.0 + 1.0 / eps)) / kPi);
}

double min_entropy_sparse(int n, int k) {
  if (k < 1 || n < 1) {
    throw std::invalid_argument("min_entropy_sparse: need 1 <= k <= n");
  }
  if (k > n) throw std::invalid_argument("min_entropy_sparse: k > n");
  // log2 C(n,k) via lgamma keeps large n exact to double precision.
  const double log_binom =
      std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
  return log_binom / std::log(2.0) + k;
}

double mod_positive(double x, double modulus) {
  double r = std::fmod(x, modulus);
  if (r < 0) r += modulus;
  // fmod of a tiny negative value can round up to exactly `modulus`.
  if (r >= modulus) r = 0.0;
  return r;
}

double centered_mod(double x, double modulus) {
  double r = mod_positive(x, modulus);
  if (r >= modulus / 2) r -= modulus;
  return r;
}

std::int64_t mod_q(std::int64_t x, std::int64_t q) {
  std::int64_t r = x % q;
  return r < 0 ? r + q : r;
}

std::int64_t centered_mod_q(std::int64_t x, std::int64_t q) {
  std::int64_t r = mod_q(x, q);
  // Representatives in [-q/2, q/2).
  if (2 * r >= q) r -= q;
  return r;
}

namespace {

double normal_cdf(double z) { return 0.5 * boost::math::erfc(-z / std::sqrt(2.0)); }

}  // namespace

Cdf gaussian_cdf(double width, double center) {
  if (!(width > 0.0)) throw std::invalid_argument("gaussian_cdf: width <= 0");
  const double sd = gaussian_stddev(width);
  return [sd, center](double x) { return normal_cdf((x - center) / sd); };
}

Cdf wrapped_gaussian_cdf(double width, double modulus) {
  if (!(width > 0.0) || !(modulus > 0.0)) {
    throw std::invalid_argument("wrapped_gaussian_cdf: bad parameters");
  }
  const double sd = gaussian_stddev(width);
  // Images farther than ~40 sd contribute nothing in double precision.
  const int reach = static_cast<int>(std::ceil(40.0 * sd / modulus)) + 1;
  return [sd, modulus, reach](double x) {
    const double lo = -modulus / 2;
    if (x <= lo) return 0.0;
    if (x >= modulus / 2) return 1.0;
    double mass = 0.0;
    double total = 0.0;
    for (int j = -reach; j <= reach; ++j) {
      const double shift = j * modulus;
      const double base = normal_cdf((lo + shift) / sd);
      mass += normal_cdf((x + shift) / sd) - base;
      total += normal_cdf((lo + modulus + shift) / sd) - base;
    }
    return std::clamp(mass / total, 0.0, 1.0);
  };
}

Cdf uniform_cdf(double lo, double hi) {
  if (!(hi > lo)) throw std::invalid_argument("uniform_cdf: hi <= lo");
  return [lo, hi](double x) { return std::clamp((x - lo) / (hi - lo), 0.0, 1.0); };
}

TestReport make_report(std::string name, double statistic, double p_value,
                       std::size_t sample_count, double threshold) {
  p_value = std::clamp(p_value, 0.0, 1.0);
  return TestReport{std::move(name), statistic, p_value, sample_count,
                    threshold, p_value > threshold};
}

double kolmogorov_tail(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 0.2) return 1.0;
  // Pr[K > λ] = 2 Σ_{j≥1} (-1)^{j-1} exp(-2 j² λ²).
  double sum = 0.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = std::exp(-2.0 * j * j * lambda * lambda);
    sum += (j % 2 == 1) ? term : -term;
    if (term < 1e-17) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

double chi2_tail(double statistic, double dof) {
  if (dof <= 0) throw std::invalid_argument("chi2_tail: dof <= 0");
  if (statistic <= 0) return 1.0;
  return boost::math::gamma_q(dof / 2.0, statistic / 2.0);
}

TestReport ks_test(std::span<const double> samples, const Cdf& cdf,
                   double threshold) {
  if (samples.empty()) throw std::invalid_argument("ks_test: empty input");
  if (samples.size() < 20) {
    throw std::invalid_argument("ks_test: need at least 20 samples");
  }
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  double prev = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    if (!(f >= 0.0 && f <= 1.0) || f < prev) {
      throw std::invalid_argument("ks_test: cdf is not monotone on the sample grid");
    }
    prev = f;
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return make_report("ks", d, kolmogorov_tail(std::sqrt(n) * d), sorted.size(),
                     threshold);
}

namespace {

// Pools consecutive cells until every expected count reaches 5, then returns
// (statistic, degrees of freedom).
std::pair<double, double> pooled_chi2(const std::vector<double>& observed,
                                      const std::vector<double>& expected) {
  std::vector<std::pair<double, double>> cells;
  double obs = 0.0;
  double exp = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    obs += observed[i];
    exp += expected[i];
    if (exp >= 5.0) {
      cells.emplace_back(obs, exp);
      obs = exp = 0.0;
    }
  }
  if (exp > 0.0 || obs > 0.0) {
    if (cells.empty()) {
      cells.emplace_back(obs, exp);
    } else {
      cells.back().first += obs;
      cells.back().second += exp;
    }
  }
  double stat = 0.0;
  for (const auto& [o, e] : cells) {
    if (e <= 0.0) {
      // Mass observed where none is expected.
      if (o > 0.0) return {INFINITY, std::max<double>(1.0, cells.size() - 1.0)};
      continue;
    }
    stat += (o - e) * (o - e) / e;
  }
  return {stat, std::max<double>(1.0, cells.size() - 1.0)};
}

}  // namespace

TestReport chi2_uniform_modq(std::span<const std::int64_t> residues,
                             std::int64_t q, double threshold) {
  if (q < 2) throw std::invalid_argument("chi2_uniform_modq: q < 2");
  if (residues.size() < static_cast<std::size_t>(5 * q)) {
    throw std::invalid_argument(
        "chi2_uniform_modq: need at least 5q samples for the bin-count rule");
  }
  std::vector<double> counts(q, 0.0);
  for (std::int64_t r : residues) counts[mod_q(r, q)] += 1.0;
  const double expected = static_cast<double>(residues.size()) / q;
  double stat = 0.0;
  for (double c : counts) stat += (c - expected) * (c - expected) / expected;
  return make_report("chi2-uniform", stat, chi2_tail(stat, q - 1.0),
                     residues.size(), threshold);
}

TestReport chi2_pmf(std::span<const std::int64_t> values,
                    std::int64_t support_min, std::span<const double> pmf,
                    double threshold) {
  if (values.empty()) throw std::invalid_argument("chi2_pmf: empty input");
  if (pmf.size() < 2) throw std::invalid_argument("chi2_pmf: support too small");
  double total = 0.0;
  for (double p : pmf) total += p;
  const auto cells = static_cast<std::int64_t>(pmf.size());
  std::vector<double> observed(pmf.size(), 0.0);
  for (std::int64_t v : values) {
    const std::int64_t idx = std::clamp<std::int64_t>(v - support_min, 0, cells - 1);
    observed[idx] += 1.0;
  }
  std::vector<double> expected(pmf.size());
  const double n = static_cast<double>(values.size());
  for (std::size_t i = 0; i < pmf.size(); ++i) expected[i] = n * pmf[i] / total;
  const auto [stat, dof] = pooled_chi2(observed, expected);
  return make_report("chi2-pmf", stat, chi2_tail(stat, dof), values.size(),
                     threshold);
}

namespace {

long bin_index(double x, const Binning& b) {
  const double width = (b.hi - b.lo) / b.bins;
  const double raw = std::floor((x - b.lo) / width);
  if (raw < 0) return 0;
  if (raw >= b.bins) return b.bins + 1;
  return static_cast<long>(raw) + 1;
}

std::vector<long> cell_key(const std::vector<double>& x, const Binning& b) {
  std::vector<long> key(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) key[i] = bin_index(x[i], b);
  return key;
}

}  // namespace

double tv_estimate(const std::vector<std::vector<double>>& samples_a,
                   const std::vector<std::vector<double>>& samples_b,
                   const Binning& binning) {
  if (samples_a.empty() || samples_b.empty()) {
    throw std::invalid_argument("tv_estimate: empty sample set");
  }
  if (!(binning.hi > binning.lo) || binning.bins < 1) {
    throw std::invalid_argument("tv_estimate: bad binning");
  }
  const std::size_t dim = samples_a.front().size();
  std::map<std::vector<long>, std::pair<double, double>> cells;
  for (const auto& x : samples_a) {
    if (x.size() != dim) throw std::invalid_argument("tv_estimate: dimension mismatch");
    cells[cell_key(x, binning)].first += 1.0;
  }
  for (const auto& x : samples_b) {
    if (x.size() != dim) throw std::invalid_argument("tv_estimate: dimension mismatch");
    cells[cell_key(x, binning)].second += 1.0;
  }
  const double na = static_cast<double>(samples_a.size());
  const double nb = static_cast<double>(samples_b.size());
  double l1 = 0.0;
  for (const auto& [key, counts] : cells) {
    l1 += std::abs(counts.first / na - counts.second / nb);
  }
  return std::clamp(0.5 * l1, 0.0, 1.0);
}

double tv_estimate_vs_cdf(std::span<const double> samples, const Cdf& cdf,
                          const Binning& binning) {
  if (samples.empty()) throw std::invalid_argument("tv_estimate_vs_cdf: empty");
  if (!(binning.hi > binning.lo) || binning.bins < 1) {
    throw std::invalid_argument("tv_estimate_vs_cdf: bad binning");
  }
  std::vector<double> counts(binning.bins + 2, 0.0);
  for (double x : samples) counts[bin_index(x, binning)] += 1.0;
  const double width = (binning.hi - binning.lo) / binning.bins;
  const double n = static_cast<double>(samples.size());
  double l1 = 0.0;
  double prev = cdf(binning.lo);
  l1 += std::abs(counts[0] / n - prev);
  for (int i = 1; i <= binning.bins; ++i) {
    const double next = cdf(binning.lo + i * width);
    l1 += std::abs(counts[i] / n - (next - prev));
    prev = next;
  }
  l1 += std::abs(counts[binning.bins + 1] / n - (1.0 - prev));
  return std::clamp(0.5 * l1, 0.0, 1.0);
}

}  // namespace clwe
