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

#include "clwe/gmm.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace clwe {

RejectionResult clwe_to_hclwe(const ClweBatch& samples, double delta_r,
                              RngStream& rng) {
  if (!(delta_r > 0.0 && delta_r < 0.25)) {
    throw std::invalid_argument("clwe_to_hclwe: delta_r must lie in (0, 1/4)");
  }
  RejectionResult out;
  out.offered = samples.samples.size();
  for (const Sample& s : samples.samples) {
    const double b = centered_mod(s.b, 1.0);
    if (rng.uniform() < rho(b, delta_r)) out.points.push_back(s.a);
  }
  out.acceptance_rate =
      out.offered == 0 ? 0.0 : static_cast<double>(out.points.size()) / out.offered;
  return out;
}

double hclwe_beta_after_rejection(double beta, double delta_r) {
  return std::sqrt(beta * beta + delta_r * delta_r);
}

double expected_acceptance_rate(double w, double delta_r) {
  if (!(delta_r > 0.0)) throw std::invalid_argument("expected_acceptance_rate: delta <= 0");
  // Density of D_w mod 1 on [-1/2, 1/2).
  auto folded = [w](double b) {
    if (w <= 0.0) return 1.0;
    const int reach = static_cast<int>(std::ceil(8.0 * w)) + 2;
    double total = 0.0;
    for (int j = -reach; j <= reach; ++j) total += rho(b + j, w) / w;
    return total;
  };
  const int panels = 20000;
  const double h = 1.0 / panels;
  double acc = 0.0;
  for (int i = 0; i <= panels; ++i) {
    const double b = -0.5 + i * h;
    const double f = folded(b) * rho(b, delta_r);
    const double weight = (i == 0 || i == panels) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    acc += weight * f;
  }
  return acc * h / 3.0;
}

int g_for(double gamma, double m) {
  if (!(m >= 2.0)) throw std::invalid_argument("g_for: m must be >= 2");
  if (!(gamma >= 0.0)) throw std::invalid_argument("g_for: gamma must be >= 0");
  return static_cast<int>(std::ceil(4.0 * gamma * std::sqrt(std::log(m) / kPi))) + 1;
}

MixtureSpec package_gmm(const SecretVector& secret, double gamma, double beta, int g) {
  return make_mixture_spec(secret, gamma, beta, g);
}

Json SolverParams::to_json() const {
  return Json{{"n", n},
              {"k", k},
              {"gamma", gamma},
              {"beta", beta},
              {"gamma_prime", gamma_prime},
              {"modulus_f", modulus_f},
              {"m", m},
              {"delta", delta},
              {"a_thresh", a_thresh},
              {"m_multiplier", m_multiplier},
              {"half_width", half_width()}};
}

SolverParams make_solver_params(int n, int k, double gamma, double beta,
                                int m_override, double m_multiplier) {
  if (!(k >= 1 && k <= n)) throw std::invalid_argument("solver: need 1 <= k <= n");
  if (!(beta > 0.0) || !(gamma > 0.0)) {
    throw std::invalid_argument("solver: need gamma > 0 and beta > 0");
  }
  if (!(m_multiplier > 0.0)) throw std::invalid_argument("solver: m multiplier must be > 0");
  const double bsk = beta * std::sqrt(static_cast<double>(k));
  if (!(bsk < 1.0)) {
    throw std::invalid_argument(
        fmt::format("solver: hypothesis beta*sqrt(k) < 1 fails ({})", bsk));
  }
  SolverParams p;
  p.n = n;
  p.k = k;
  p.gamma = gamma;
  p.beta = beta;
  p.m_multiplier = m_multiplier;
  p.gamma_prime = std::sqrt(gamma * gamma + beta * beta);
  const double root_k = std::ceil(std::sqrt(static_cast<double>(k)) - 1e-12);
  p.modulus_f = gamma / (root_k * p.gamma_prime * p.gamma_prime);
  if (m_override > 0) {
    p.m = m_override;
  } else {
    const double base = 5.0 * k * std::log2(static_cast<double>(n)) / std::log2(1.0 / bsk);
    p.m = std::max(1, static_cast<int>(std::ceil(m_multiplier * base - 1e-9)));
  }
  p.delta = 1.0 / (100.0 * p.m);
  p.a_thresh = std::sqrt(std::log(1.0 / p.delta));
  const double need =
      2.0 * std::sqrt(k * (std::log(static_cast<double>(n)) + std::log(static_cast<double>(p.m))));
  if (gamma < need * (1.0 - 1e-12)) {
    throw std::invalid_argument(fmt::format(
        "solver: hypothesis gamma >= 2 sqrt(k (ln n + ln m)) fails ({} < {})", gamma, need));
  }
  return p;
}

namespace {

// Advances `support` to the next k-subset of [0, n) in lexicographic order.
bool next_combination(std::vector<int>* support, int n) {
  const int k = static_cast<int>(support->size());
  int i = k - 1;
  while (i >= 0 && (*support)[i] == n - k + i) --i;
  if (i < 0) return false;
  ++(*support)[i];
  for (int j = i + 1; j < k; ++j) (*support)[j] = (*support)[j - 1] + 1;
  return true;
}

bool twins(const std::vector<double>& x, const std::vector<double>& y) {
  bool same = true;
  bool opposite = true;
  for (std::size_t i = 0; i < x.size(); ++i) {
    same = same && std::abs(x[i] - y[i]) <= 1e-9;
    opposite = opposite && std::abs(x[i] + y[i]) <= 1e-9;
  }
  return same || opposite;
}

}  // namespace

SolverResult solve_sparse_hclwe(const std::vector<std::vector<double>>& samples,
                                const SolverParams& params, std::size_t top_count) {
  if (params.m < 1) throw std::invalid_argument("solver: m must be >= 1");
  if (samples.size() < static_cast<std::size_t>(params.m)) {
    throw std::invalid_argument(fmt::format(
        "solver: need at least m = {} samples, got {}", params.m, samples.size()));
  }
  const int n = params.n;
  const int k = params.k;
  for (int i = 0; i < params.m; ++i) {
    if (samples[i].size() != static_cast<std::size_t>(n)) {
      throw std::invalid_argument("solver: sample dimension differs from n");
    }
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(k));
  const double half = params.half_width();
  SolverResult result;
  result.histogram.assign(params.m + 1, 0);
  std::vector<double> first;

  std::vector<int> support(k);
  for (int i = 0; i < k; ++i) support[i] = i;
  do {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
      // Bit (k-1-j) set means coordinate support[j] is +1.
      int passes = 0;
      for (int i = 0; i < params.m; ++i) {
        double dot = 0.0;
        for (int j = 0; j < k; ++j) {
          const bool plus = (mask >> (k - 1 - j)) & 1;
          dot += plus ? samples[i][support[j]] : -samples[i][support[j]];
        }
        const double f = centered_mod(dot * scale, params.modulus_f);
        if (std::abs(f) <= half) ++passes;
      }
      ++result.candidates;
      ++result.histogram[passes];
      result.pass_counts.push_back(passes);
      const bool accepted = passes == params.m;
      if (!accepted && result.top.size() >= top_count &&
          passes <= result.top.back().passes) {
        continue;
      }
      std::vector<double> cand(n, 0.0);
      for (int j = 0; j < k; ++j) {
        cand[support[j]] = ((mask >> (k - 1 - j)) & 1) ? scale : -scale;
      }
      if (accepted) {
        ++result.passing;
        if (first.empty()) {
          first = cand;
        } else if (!twins(first, cand)) {
          result.ambiguous = true;
        }
      }
      CandidateScore score{std::move(cand), passes};
      const auto pos = std::upper_bound(
          result.top.begin(), result.top.end(), score,
          [](const CandidateScore& a, const CandidateScore& b) { return a.passes > b.passes; });
      result.top.insert(pos, std::move(score));
      if (result.top.size() > top_count) result.top.pop_back();
    }
  } while (next_combination(&support, n));

  if (!first.empty()) result.secret = make_secret(first, SecretKind::kScaledSparse);
  return result;
}

bool same_secret_up_to_sign(const SecretVector& found, const SecretVector& expected) {
  if (found.dim() != expected.dim()) return false;
  return twins(found.entries, expected.entries);
}

Json GmmExperimentParams::to_json() const {
  return Json{{"preset", preset}, {"ell", ell},     {"exponent", exponent},
              {"n", n},           {"k", k},         {"q", q},
              {"sigma", sigma},   {"m", m},         {"gamma", gamma},
              {"beta", beta},     {"g", g},         {"feasible", feasible},
              {"warnings", warnings}};
}

GmmExperimentParams gmm_experiment_params(const std::string& preset, int ell,
                                          double exponent, std::int64_t m,
                                          double c_slack) {
  if (ell < 2) throw std::invalid_argument("gmm params: ell must be >= 2");
  GmmExperimentParams p;
  p.preset = preset;
  p.ell = ell;
  p.exponent = exponent;
  const double l = ell;
  if (preset == "poly") {
    if (!(exponent > 1.0)) throw std::invalid_argument("gmm params: poly needs alpha > 1");
    p.n = std::llround(std::pow(l, exponent));
    p.k = std::llround(std::ceil(4.0 * l / (exponent - 1.0) - 1e-9));
  } else if (preset == "subexp") {
    if (!(exponent > 0.0 && exponent < 1.0)) {
      throw std::invalid_argument("gmm params: subexp needs delta in (0, 1)");
    }
    const double log_n = std::pow(l, exponent);
    if (log_n > 62.0) throw std::invalid_argument("gmm params: n = 2^(l^delta) overflows");
    p.n = std::llround(std::exp2(log_n));
    p.k = std::llround(std::ceil(4.0 * std::pow(l, 1.0 - exponent) * std::log2(l) - 1e-9));
  } else {
    throw std::invalid_argument("gmm params: unknown preset '" + preset + "'");
  }
  p.q = static_cast<std::int64_t>(ell) * ell;
  p.sigma = std::sqrt(l);
  p.m = m > 0 ? m
              : std::max<std::int64_t>(
                    ell, static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(p.q)))));
  if (p.m < 2) p.m = 2;
  p.gamma = std::sqrt(static_cast<double>(p.k)) *
            std::sqrt(std::log(static_cast<double>(p.m)) +
                      std::log(static_cast<double>(p.n)) + c_slack);
  p.beta = p.sigma * std::sqrt(static_cast<double>(p.k)) / static_cast<double>(p.q);
  p.g = g_for(p.gamma, static_cast<double>(p.m));
  if (p.k >= p.n) {
    p.feasible = false;
    p.warnings.push_back(fmt::format("k = {} >= n = {}: no k-sparse secrets exist", p.k, p.n));
  }
  if (p.feasible) {
    const double entropy = p.k * std::log2(static_cast<double>(p.n) / p.k);
    const double need = (ell + 1) * std::log2(static_cast<double>(p.q));
    if (entropy < need) {
      p.warnings.push_back(fmt::format(
          "k log2(n/k) >= (l+1) log2(q) fails at this scale: {:.4g} < {:.4g}", entropy, need));
    }
  }
  if (p.sigma < 10.0 * std::sqrt(std::log(static_cast<double>(p.n)) +
                                 std::log(static_cast<double>(p.m)))) {
    p.warnings.push_back("sigma >= 10 sqrt(ln n + ln m) fails at this scale");
  }
  return p;
}

}  // namespace clwe
