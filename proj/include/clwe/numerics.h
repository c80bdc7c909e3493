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

#ifndef CLWE_NUMERICS_H_
#define CLWE_NUMERICS_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace clwe {

// Replaces every asymptotic ω(log λ) / negl(λ) term inside a
// √(ln n + ln m + ·) expression.
inline constexpr double kDefaultSlack = 4.0;

// 2^-40.
inline constexpr double kDefaultSmoothingEps = 9.094947017729282e-13;

inline constexpr double kPi = 3.14159265358979323846;

// Parameters of the Gaussian function ρ_{s,c}(x) = exp(-π‖(x - c)/s‖²).
// The matching continuous distribution D_{s,c} has covariance s²/(2π)·I.
struct GaussianParam {
  double width = 1.0;
  std::vector<double> center;

  // Validates width > 0 and a finite center.
  static GaussianParam Make(double width, std::vector<double> center);
  // Zero-centered in dimension n.
  static GaussianParam Centered(double width, std::size_t n);
};

double rho(std::span<const double> x, const GaussianParam& g);
double rho(double x, double width, double center = 0.0);

// Standard deviation of D_s: s / √(2π).
inline double gaussian_stddev(double width) {
  return width / 2.5066282746310002;
}

// Upper bound on η_ε(ℤⁿ): √(ln(2n(1 + 1/ε))/π).
double smoothing_bound(int n, double eps = kDefaultSmoothingEps);

// Exact min-entropy log₂(C(n,k)·2^k) of the uniform distribution on S_{n,k}.
double min_entropy_sparse(int n, int k);

// Torus helpers. mod_positive maps into [0, modulus); centered_mod into
// [-modulus/2, modulus/2).
double mod_positive(double x, double modulus);
double centered_mod(double x, double modulus);
std::int64_t mod_q(std::int64_t x, std::int64_t q);
std::int64_t centered_mod_q(std::int64_t x, std::int64_t q);

using Cdf = std::function<double(double)>;

// cdf of D_{width, center} on ℝ.
Cdf gaussian_cdf(double width, double center = 0.0);
// cdf of D_width reduced mod `modulus`, on the centered domain
// [-modulus/2, modulus/2).
Cdf wrapped_gaussian_cdf(double width, double modulus);
Cdf uniform_cdf(double lo, double hi);

// Outcome of one statistical test. `pass` means p_value > threshold.
struct TestReport {
  std::string name;
  double statistic = 0.0;
  double p_value = 1.0;
  std::size_t sample_count = 0;
  double threshold = 0.001;
  bool pass = true;
};

TestReport make_report(std::string name, double statistic, double p_value,
                       std::size_t sample_count, double threshold);

// Asymptotic Kolmogorov tail Pr[K > lambda].
double kolmogorov_tail(double lambda);
// Upper tail of the χ² distribution with `dof` degrees of freedom.
double chi2_tail(double statistic, double dof);

// One-sample Kolmogorov–Smirnov test with the asymptotic p-value.
// Requires at least 20 samples; throws if the cdf is not monotone on the
// sorted samples or leaves [0, 1].
TestReport ks_test(std::span<const double> samples, const Cdf& cdf,
                   double threshold = 0.001);

// Pearson χ² against U(ℤ_q). Needs at least 5q samples.
TestReport chi2_uniform_modq(std::span<const std::int64_t> residues,
                             std::int64_t q, double threshold = 0.001);

// Pearson χ² of integer observations against a pmf on the consecutive
// support [support_min, support_min + pmf.size()). Adjacent cells are pooled
// left to right until each expected count is at least 5; observations outside
// the support land in the edge cells.
TestReport chi2_pmf(std::span<const std::int64_t> values,
                    std::int64_t support_min, std::span<const double> pmf,
                    double threshold = 0.001);

// Product-grid binning over [lo, hi) per coordinate. Values outside the range
// fall into one overflow cell on each side.
struct Binning {
  double lo = -1.0;
  double hi = 1.0;
  int bins = 100;
};

// Half-L1 distance between the two empirical histograms.
double tv_estimate(const std::vector<std::vector<double>>& samples_a,
                   const std::vector<std::vector<double>>& samples_b,
                   const Binning& binning);

// Half-L1 distance between the 1-D empirical histogram and the bin masses of
// `cdf`.
double tv_estimate_vs_cdf(std::span<const double> samples, const Cdf& cdf,
                          const Binning& binning);

}  // namespace clwe

#endif  // CLWE_NUMERICS_H_
