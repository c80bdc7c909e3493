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

#include "clwe/reduce_clwe.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace clwe {

double PipelinePlan::step1_width() const {
  return std::sqrt(4.0 * std::log(static_cast<double>(m)) + c_slack);
}

double PipelinePlan::step2_width() const { return 3.0 * tau; }

Json PipelinePlan::to_json() const {
  return Json{{"n", n},          {"m", m},          {"q", q},
              {"r", r},          {"sigma", sigma},  {"c_slack", c_slack},
              {"sigma2", sigma2}, {"sigma3", sigma3}, {"tau", tau},
              {"gamma", gamma},  {"beta", beta}};
}

PipelinePlan PipelinePlan::from_json(const Json& j) {
  try {
    return plan(j.at("n").get<int>(), j.at("m").get<std::int64_t>(),
                j.at("q").get<std::int64_t>(), j.at("r").get<double>(),
                j.at("sigma").get<double>(), j.value("c_slack", kDefaultSlack));
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string("bad plan record: ") + e.what());
  }
}

PipelinePlan plan(int n, std::int64_t m, std::int64_t q, double r, double sigma,
                  double c_slack) {
  if (n < 1 || m < 1) throw std::invalid_argument("plan: need n, m >= 1");
  if (q < 2) throw std::invalid_argument("plan: q must be >= 2");
  if (!(r > 0.0) || !(sigma > 0.0)) {
    throw std::invalid_argument("plan: need r > 0 and sigma > 0");
  }
  if (!(c_slack >= 0.0)) throw std::invalid_argument("plan: c_slack must be >= 0");
  PipelinePlan p;
  p.n = n;
  p.m = m;
  p.q = q;
  p.r = r;
  p.sigma = sigma;
  p.c_slack = c_slack;
  const double ln_m = std::log(static_cast<double>(m));
  const double ln_sum = std::log(static_cast<double>(n)) + ln_m + c_slack;
  const double top_up = std::sqrt(4.0 * ln_m + c_slack);
  if (!(sigma > top_up)) {
    throw std::invalid_argument(fmt::format(
        "plan: hypothesis sigma > sqrt(4 ln m + c_slack) fails ({} <= {})", sigma,
        top_up));
  }
  p.sigma2 = std::sqrt(sigma * sigma + 4.0 * ln_m + c_slack);
  p.tau = std::sqrt(ln_sum);
  p.sigma3 = std::sqrt(p.sigma2 * p.sigma2 + 9.0 * r * r * ln_sum);
  p.gamma = r * p.tau;
  p.beta = p.sigma3 / static_cast<double>(q);
  const double need = 3.0 * r * p.tau;
  if (!(p.sigma2 >= need)) {
    throw std::invalid_argument(fmt::format(
        "plan: hypothesis sigma2 >= 3 r sqrt(ln n + ln m + c_slack) fails ({} < {})",
        p.sigma2, need));
  }
  return p;
}

namespace {

void check_plan_fits(std::size_t dim, double modulus, const PipelinePlan& plan) {
  if (dim != static_cast<std::size_t>(plan.n)) {
    throw std::invalid_argument("pipeline: batch dimension differs from plan n");
  }
  if (modulus != static_cast<double>(plan.q)) {
    throw std::invalid_argument("pipeline: batch modulus differs from plan q");
  }
}

}  // namespace

ContinuousErrorLweBatch step1_errors(const DiscreteLweBatch& in,
                                     const PipelinePlan& plan, RngStream& rng) {
  check_plan_fits(in.dim, in.modulus, plan);
  const double width = plan.step1_width();
  ContinuousErrorLweBatch out;
  out.modulus = in.modulus;
  out.dim = in.dim;
  out.samples = in.samples;
  for (Sample& s : out.samples) {
    s.b = mod_positive(s.b + sample_continuous_gaussian(width, rng), out.modulus);
  }
  return out;
}

TorusLweBatch step2_samples(const ContinuousErrorLweBatch& in,
                            const PipelinePlan& plan, RngStream& rng) {
  check_plan_fits(in.dim, in.modulus, plan);
  const double width = plan.step2_width();
  TorusLweBatch out;
  out.modulus = in.modulus;
  out.dim = in.dim;
  out.samples = in.samples;
  for (Sample& s : out.samples) {
    for (double& a : s.a) {
      a = mod_positive(a + sample_continuous_gaussian(width, rng), out.modulus);
    }
  }
  return out;
}

ClweBatch step3_gaussianize(const TorusLweBatch& in, const PipelinePlan& plan,
                            RngStream& rng) {
  check_plan_fits(in.dim, in.modulus, plan);
  ClweBatch out;
  out.modulus = 1.0;
  out.dim = in.dim;
  out.samples.reserve(in.samples.size());
  const double q = in.modulus;
  for (const Sample& s : in.samples) {
    Sample t;
    t.a.resize(s.a.size());
    for (std::size_t i = 0; i < s.a.size(); ++i) {
      const double y = sample_discrete_gaussian(plan.tau, s.a[i] / q, rng);
      t.a[i] = y / plan.tau;
    }
    t.b = mod_positive(s.b / q, 1.0);
    out.samples.push_back(std::move(t));
  }
  return out;
}

SecretVector step3_secret(const SecretVector& s, const PipelinePlan& plan) {
  if (s.dim() != static_cast<std::size_t>(plan.n)) {
    throw std::invalid_argument("step3_secret: dimension differs from plan n");
  }
  if (std::abs(s.norm - plan.r) > 1e-9) {
    throw std::invalid_argument("step3_secret: secret norm differs from plan r");
  }
  const bool signed_support = std::all_of(s.entries.begin(), s.entries.end(),
                                          [](double x) { return x == 0.0 || std::abs(x) == 1.0; });
  std::vector<double> entries = s.entries;
  for (double& x : entries) x /= plan.r;
  return make_secret(std::move(entries), signed_support ? SecretKind::kScaledSparse
                                                        : SecretKind::kUnitSphere);
}

RotatedClwe step4_rotate(const ClweBatch& in, const SecretVector* secret,
                         RngStream& rng) {
  const int n = static_cast<int>(in.dim);
  RotatedClwe out;
  out.rotation = sample_rotation(n, rng);
  out.samples.modulus = in.modulus;
  out.samples.dim = in.dim;
  out.samples.samples.reserve(in.samples.size());
  for (const Sample& s : in.samples) {
    const Eigen::VectorXd a = Eigen::Map<const Eigen::VectorXd>(s.a.data(), n);
    const Eigen::VectorXd ra = out.rotation * a;
    out.samples.samples.push_back(Sample{std::vector<double>(ra.data(), ra.data() + n), s.b});
  }
  if (secret != nullptr) {
    if (secret->dim() != in.dim) {
      throw std::invalid_argument("step4_rotate: secret dimension mismatch");
    }
    const Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(secret->entries.data(), n);
    const Eigen::VectorXd rw = out.rotation * w;
    std::vector<double> entries(rw.data(), rw.data() + n);
    out.secret = make_secret(std::move(entries), SecretKind::kUnitSphere);
  }
  return out;
}

RotatedClwe run_pipeline(const DiscreteLweBatch& in, const PipelinePlan& plan,
                         RngStream& rng, const SecretVector* secret) {
  const ContinuousErrorLweBatch s1 = step1_errors(in, plan, rng);
  const TorusLweBatch s2 = step2_samples(s1, plan, rng);
  const ClweBatch s3 = step3_gaussianize(s2, plan, rng);
  if (secret == nullptr) return step4_rotate(s3, nullptr, rng);
  const SecretVector w = step3_secret(*secret, plan);
  return step4_rotate(s3, &w, rng);
}

TorusLweBatch reverse_scale(const ClweBatch& in, std::int64_t q, double tau) {
  if (q < 2) throw std::invalid_argument("reverse_scale: q must be >= 2");
  if (!(tau > 0.0)) throw std::invalid_argument("reverse_scale: tau must be > 0");
  const double qd = static_cast<double>(q);
  TorusLweBatch out;
  out.modulus = qd;
  out.dim = in.dim;
  out.samples.reserve(in.samples.size());
  for (const Sample& s : in.samples) {
    Sample t;
    t.a.resize(s.a.size());
    for (std::size_t i = 0; i < s.a.size(); ++i) {
      t.a[i] = mod_positive(s.a[i] * tau * qd, qd);
    }
    t.b = mod_positive(s.b * qd, qd);
    out.samples.push_back(std::move(t));
  }
  return out;
}

SecretVector reverse_secret(const SecretVector& w, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("reverse_secret: r must be > 0");
  std::vector<double> entries = w.entries;
  for (double& x : entries) {
    x *= r;
    const double rounded = std::round(x);
    if (std::abs(x - rounded) > 1e-9) {
      throw std::invalid_argument(
          "reverse_secret: r * secret is not integral; the reverse reduction "
          "needs a discrete-coset CLWE secret");
    }
    x = rounded;
  }
  return make_secret(std::move(entries), SecretKind::kFixedNorm);
}

ContinuousErrorLweBatch reverse_discretize(const TorusLweBatch& in, double tau,
                                           RngStream& rng) {
  if (!(tau > 0.0)) throw std::invalid_argument("reverse_discretize: tau must be > 0");
  const double q = in.modulus;
  if (q < 2.0 || q != std::floor(q)) {
    throw std::invalid_argument("reverse_discretize: needs an integer modulus q >= 2");
  }
  ContinuousErrorLweBatch out;
  out.modulus = q;
  out.dim = in.dim;
  out.samples.reserve(in.samples.size());
  for (const Sample& s : in.samples) {
    Sample t;
    t.a.resize(s.a.size());
    for (std::size_t i = 0; i < s.a.size(); ++i) {
      const double shift = sample_discrete_gaussian(tau, -s.a[i], rng);
      const double sum = s.a[i] + shift;
      const double rounded = std::round(sum);
      if (std::abs(sum - rounded) > 1e-9) {
        throw std::logic_error("reverse_discretize: coset shift missed the integers");
      }
      t.a[i] = mod_positive(rounded, q);
    }
    t.b = s.b;
    out.samples.push_back(std::move(t));
  }
  return out;
}

}  // namespace clwe
