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

#include "clwe/harness.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <stdexcept>

#include <fmt/format.h>

#include "clwe/gmm.h"
#include "clwe/samplers.h"
#include "clwe/sparse_lwe.h"

namespace clwe {

void ExperimentConfig::validate() const {
  if (std::find(kScenarios.begin(), kScenarios.end(), scenario) == kScenarios.end()) {
    throw std::invalid_argument("unknown scenario '" + scenario + "'");
  }
  if (n < 1) throw std::invalid_argument("config: n must be >= 1");
  if (m < 1) throw std::invalid_argument("config: m must be >= 1");
  if (q < 2) throw std::invalid_argument("config: q must be >= 2");
  if (!(sigma > 0.0)) throw std::invalid_argument("config: sigma must be > 0");
  if (!(gamma > 0.0) || !(beta > 0.0)) {
    throw std::invalid_argument("config: gamma and beta must be > 0");
  }
  if (trials < 1 || batch < 1) throw std::invalid_argument("config: trials and batch must be >= 1");
  if (g < 0) throw std::invalid_argument("config: g must be >= 0");
  if (scenario == "lwe") {
    const double r2 = r * r;
    if (std::abs(r2 - std::round(r2)) > 1e-3 || std::round(r2) < 1 || std::round(r2) > n) {
      throw std::invalid_argument("config: lwe needs r^2 an integer in [1, n]");
    }
  }
  if (scenario == "sparse-lwe") {
    SparseReductionParams{n, k, m, ell, q, sigma, c_slack}.validate();
  }
  if (!secret_kind.empty()) parse_secret_kind(secret_kind);
}

Json ExperimentConfig::to_json() const {
  return Json{{"scenario", scenario}, {"n", n},
              {"m", m},               {"q", q},
              {"sigma", sigma},       {"k", k},
              {"r", r},               {"gamma", gamma},
              {"beta", beta},         {"c_slack", c_slack},
              {"g", g},               {"ell", ell},
              {"secret_kind", secret_kind}, {"seed", seed},
              {"trials", trials},     {"batch", batch},
              {"in_path", in_path},   {"out_path", out_path},
              {"transcript_path", transcript_path}};
}

ExperimentConfig ExperimentConfig::from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  ExperimentConfig c;
  const Json defaults = c.to_json();
  for (const auto& [key, value] : j.items()) {
    if (!defaults.contains(key)) throw std::invalid_argument("unknown config key '" + key + "'");
  }
  auto take = [&j](const char* key, auto* field) {
    if (j.contains(key)) *field = j.at(key).get<std::decay_t<decltype(*field)>>();
  };
  take("scenario", &c.scenario);
  take("n", &c.n);
  take("m", &c.m);
  take("q", &c.q);
  take("sigma", &c.sigma);
  take("k", &c.k);
  take("r", &c.r);
  take("gamma", &c.gamma);
  take("beta", &c.beta);
  take("c_slack", &c.c_slack);
  take("g", &c.g);
  take("ell", &c.ell);
  take("secret_kind", &c.secret_kind);
  take("seed", &c.seed);
  take("trials", &c.trials);
  take("batch", &c.batch);
  take("in_path", &c.in_path);
  take("out_path", &c.out_path);
  take("transcript_path", &c.transcript_path);
  return c;
}

namespace {

SecretVector draw_secret(SecretKind kind, const ExperimentConfig& c, RngStream& rng) {
  switch (kind) {
    case SecretKind::kFixedNorm:
      return sample_fixed_norm_secret(c.n, static_cast<int>(std::lround(c.r * c.r)), rng);
    case SecretKind::kSparse:
      return sample_sparse_secret(c.n, c.k, rng);
    case SecretKind::kUnitSphere:
      return sample_sphere_secret(c.n, rng);
    case SecretKind::kScaledSparse:
      return sample_scaled_sparse_secret(c.n, c.k, rng);
    case SecretKind::kScaledBinary:
      return sample_scaled_binary_secret(c.n, rng);
  }
  throw std::logic_error("unreachable secret kind");
}

SecretKind kind_or(const ExperimentConfig& c, SecretKind fallback) {
  return c.secret_kind.empty() ? fallback : parse_secret_kind(c.secret_kind);
}

std::string instance_id(const std::string& scenario, const ExperimentConfig& c,
                        const RngStream& rng) {
  const std::string material = fmt::format("{}|{}|{}|{}|{}", scenario, rng.seed(),
                                           rng.stream(), rng.position(), c.to_json().dump());
  return sha256_hex(material).substr(0, 16);
}

std::vector<double> a_coordinates(const SampleBatch& batch) {
  std::vector<double> out;
  out.reserve(batch.samples.size() * batch.dim);
  for (const Sample& s : batch.samples) out.insert(out.end(), s.a.begin(), s.a.end());
  return out;
}

std::vector<std::int64_t> a_residues(const SampleBatch& batch) {
  std::vector<std::int64_t> out;
  out.reserve(batch.samples.size() * batch.dim);
  for (const Sample& s : batch.samples) {
    for (double x : s.a) out.push_back(std::llround(x));
  }
  return out;
}

std::vector<double> b_values(const SampleBatch& batch) {
  std::vector<double> out;
  out.reserve(batch.samples.size());
  for (const Sample& s : batch.samples) out.push_back(s.b);
  return out;
}

TestReport named(TestReport r, std::string name) {
  r.name = std::move(name);
  return r;
}

TestReport exact_check(std::string name, bool ok, std::size_t count) {
  return make_report(std::move(name), ok ? 0.0 : 1.0, ok ? 1.0 : 0.0, count, 0.5);
}

const Json& require(const Json& j, const char* key, const char* what) {
  if (!j.contains(key)) {
    throw std::invalid_argument(fmt::format("transcript lacks '{}' needed by {}", key, what));
  }
  return j.at(key);
}

SecretVector transcript_secret(const Json& transcript, const char* battery) {
  const Json& s = require(transcript, "secret", battery);
  if (s.is_null()) throw std::invalid_argument(fmt::format("{} needs a planted secret", battery));
  return secret_from_json(s);
}

void require_domains(const SampleBatch& batch, ADomain a, const char* battery) {
  if (batch.a_domain != a) {
    throw std::invalid_argument(fmt::format("{} expects a-domain {}, file has {}", battery,
                                            a_domain_name(a), a_domain_name(batch.a_domain)));
  }
}

// Centered integer residuals b − ⟨a, s⟩ mod q for integral data.
std::vector<std::int64_t> int_residuals(const SampleBatch& batch, const SecretVector& s) {
  const auto q = static_cast<std::int64_t>(std::llround(batch.modulus));
  std::vector<std::int64_t> out;
  out.reserve(batch.samples.size());
  for (const Sample& smp : batch.samples) {
    std::int64_t acc = std::llround(smp.b);
    for (std::size_t i = 0; i < smp.a.size(); ++i) {
      acc = mod_q(acc - std::llround(smp.a[i]) * std::llround(s.entries[i]), q);
    }
    out.push_back(centered_mod_q(acc, q));
  }
  return out;
}

// χ² of residues mod q against D_{ℤ,width} folded onto ℤ_q.
TestReport discrete_residual_test(const std::vector<std::int64_t>& res, double width,
                                  std::int64_t q, const std::string& name) {
  std::int64_t support_min = 0;
  const std::vector<double> pmf = discrete_gaussian_pmf(width, &support_min);
  std::vector<double> folded(static_cast<std::size_t>(q), 0.0);
  for (std::size_t i = 0; i < pmf.size(); ++i) {
    folded[mod_q(support_min + static_cast<std::int64_t>(i), q)] += pmf[i];
  }
  std::vector<std::int64_t> residues;
  residues.reserve(res.size());
  for (std::int64_t x : res) residues.push_back(mod_q(x, q));
  return named(chi2_pmf(residues, 0, folded), name);
}

void battery_clwe_residual(const SampleBatch& batch, const Json& t, BatteryReport* rep) {
  require_domains(batch, ADomain::kGaussian, "clwe-residual");
  const SecretVector s = transcript_secret(t, "clwe-residual");
  const Json& p = require(t, "params", "clwe-residual");
  const double gamma = p.at("gamma").get<double>();
  const double beta = p.at("beta").get<double>();
  const std::vector<double> res = residuals(batch, s, gamma);
  rep->tests.push_back(named(ks_test(res, wrapped_gaussian_cdf(beta, 1.0)), "residual-ks"));
  rep->tests.push_back(named(ks_test(a_coordinates(batch), gaussian_cdf(1.0)), "a-gaussian-ks"));
}

void battery_lwe_residual(const SampleBatch& batch, const Json& t, BatteryReport* rep) {
  require_domains(batch, ADomain::kZq, "lwe-residual");
  const SecretVector s = transcript_secret(t, "lwe-residual");
  if (!s.is_integral()) throw std::invalid_argument("lwe-residual needs an integral secret");
  const Json& p = require(t, "params", "lwe-residual");
  const double width = p.contains("error_width") ? p.at("error_width").get<double>()
                                                 : p.at("sigma").get<double>();
  const auto q = static_cast<std::int64_t>(std::llround(batch.modulus));
  if (batch.b_domain == BDomain::kZq) {
    rep->tests.push_back(discrete_residual_test(int_residuals(batch, s), width, q, "residual-chi2"));
  } else {
    const std::vector<double> res = residuals(batch, s, 1.0);
    rep->tests.push_back(named(ks_test(res, wrapped_gaussian_cdf(width, batch.modulus)),
                               "residual-ks"));
  }
  rep->tests.push_back(named(chi2_uniform_modq(a_residues(batch), q), "a-uniform-chi2"));
}

void battery_null_clwe(const SampleBatch& batch, BatteryReport* rep) {
  require_domains(batch, ADomain::kGaussian, "null-clwe");
  rep->tests.push_back(named(ks_test(a_coordinates(batch), gaussian_cdf(1.0)), "a-gaussian-ks"));
  if (batch.b_domain != BDomain::kTq) throw std::invalid_argument("null-clwe expects b on T_1");
  rep->tests.push_back(named(ks_test(b_values(batch), uniform_cdf(0.0, batch.modulus)),
                             "b-uniform-ks"));
}

void battery_null_lwe(const SampleBatch& batch, BatteryReport* rep) {
  const auto q = static_cast<std::int64_t>(std::llround(batch.modulus));
  if (batch.a_domain == ADomain::kZq) {
    rep->tests.push_back(named(chi2_uniform_modq(a_residues(batch), q), "a-uniform-chi2"));
  } else if (batch.a_domain == ADomain::kTq) {
    rep->tests.push_back(named(ks_test(a_coordinates(batch), uniform_cdf(0.0, batch.modulus)),
                               "a-uniform-ks"));
  } else {
    throw std::invalid_argument("null-lwe expects a in Z_q or T_q");
  }
  if (batch.b_domain == BDomain::kZq) {
    std::vector<std::int64_t> b;
    for (const Sample& s : batch.samples) b.push_back(std::llround(s.b));
    rep->tests.push_back(named(chi2_uniform_modq(b, q), "b-uniform-chi2"));
  } else {
    rep->tests.push_back(named(ks_test(b_values(batch), uniform_cdf(0.0, batch.modulus)),
                               "b-uniform-ks"));
  }
}

void battery_hclwe(const SampleBatch& batch, const Json& t, BatteryReport* rep) {
  require_domains(batch, ADomain::kGaussian, "hclwe-projection");
  const SecretVector s = transcript_secret(t, "hclwe-projection");
  const Json& p = require(t, "params", "hclwe-projection");
  const MixtureSpec spec = make_mixture_spec(s, p.at("gamma").get<double>(),
                                             p.at("beta").get<double>(), p.at("g").get<int>());
  const std::size_t n = s.dim();
  std::vector<double> along;
  along.reserve(batch.samples.size());
  for (const Sample& smp : batch.samples) {
    double dot = 0.0;
    for (std::size_t i = 0; i < n; ++i) dot += smp.a[i] * s.entries[i];
    along.push_back(dot);
  }
  rep->tests.push_back(named(ks_test(along, mixture_projection_cdf(spec)), "projection-ks"));
  if (n < 2) return;
  // Unit direction orthogonal to s, from the basis vector least aligned with it.
  std::size_t j = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (std::abs(s.entries[i]) < std::abs(s.entries[j])) j = i;
  }
  std::vector<double> u(n);
  for (std::size_t i = 0; i < n; ++i) u[i] = (i == j ? 1.0 : 0.0) - s.entries[j] * s.entries[i];
  double norm = 0.0;
  for (double x : u) norm += x * x;
  norm = std::sqrt(norm);
  std::vector<double> across;
  across.reserve(batch.samples.size());
  for (const Sample& smp : batch.samples) {
    double dot = 0.0;
    for (std::size_t i = 0; i < n; ++i) dot += smp.a[i] * u[i] / norm;
    across.push_back(dot);
  }
  rep->tests.push_back(named(ks_test(across, gaussian_cdf(1.0)), "orthogonal-ks"));
}

void battery_sparse(const SampleBatch& batch, const Json& t, BatteryReport* rep) {
  require_domains(batch, ADomain::kZq, "sparse-lwe");
  if (batch.b_domain != BDomain::kZq) throw std::invalid_argument("sparse-lwe expects b in Z_q");
  const SecretVector s = transcript_secret(t, "sparse-lwe");
  const Json& p = require(t, "params", "sparse-lwe");
  const int k = p.at("k").get<int>();
  const double sigma = p.at("sigma").get<double>();
  std::vector<std::int64_t> z;
  for (double x : s.entries) z.push_back(std::llround(x));
  bool sparse_ok = true;
  try {
    check_sparse(z, k);
  } catch (const std::invalid_argument&) {
    sparse_ok = false;
  }
  rep->tests.push_back(exact_check("secret-sparsity", sparse_ok, z.size()));
  const auto q = static_cast<std::int64_t>(std::llround(batch.modulus));
  rep->tests.push_back(discrete_residual_test(int_residuals(batch, s),
                                              2.0 * sigma * std::sqrt(k + 1.0), q, "residual-chi2"));
  rep->tests.push_back(named(chi2_uniform_modq(a_residues(batch), q), "a-uniform-chi2"));
}

void battery_gadget(const Json& t, BatteryReport* rep) {
  const Json& p = require(t, "params", "gadget");
  const int n = p.at("n").get<int>();
  const int k = p.at("k").get<int>();
  const GadgetSet g = build_gadgets(n, k);
  const GadgetIdentities id = check_gadget_identities(g);
  rep->tests.push_back(exact_check("u-selects-e1", id.u_selects_e1, 1));
  rep->tests.push_back(exact_check("v-norms", id.v_norms, 1));
  rep->tests.push_back(exact_check("t-gram", id.t_gram, 1));
  rep->tests.push_back(exact_check("v-in-kernel", id.v_in_kernel, 1));
  rep->tests.push_back(exact_check("w-inverts-v", id.w_inverts_v, 1));
  if (t.contains("secret") && !t.at("secret").is_null()) {
    const SecretVector s = secret_from_json(t.at("secret"));
    std::vector<std::int64_t> z;
    for (double x : s.entries) z.push_back(std::llround(x));
    rep->tests.push_back(exact_check("z-identities", check_Z_identities(z, k), 1));
  }
}

}  // namespace

PlantResult plant(const std::string& scenario, const ExperimentConfig& config,
                  RngStream& rng) {
  ExperimentConfig c = config;
  c.scenario = scenario;
  c.validate();
  PlantResult out;
  out.header.kind = scenario;
  out.header.seed = rng.seed();
  out.header.instance = instance_id(scenario, c, rng);
  const auto count = static_cast<std::size_t>(c.m);
  Json params = {{"n", c.n}, {"m", c.m}};
  Json secret = nullptr;

  if (scenario == "lwe") {
    const SecretVector s = draw_secret(kind_or(c, SecretKind::kFixedNorm), c, rng);
    LweParams lp;
    lp.n = c.n;
    lp.m = c.m;
    lp.q = c.q;
    lp.sigma = c.sigma;
    lp.secret_kind = s.kind;
    out.batch = gen_lwe(lp, s, count, rng);
    params.update({{"q", c.q}, {"sigma", c.sigma}, {"r", c.r}, {"error", "discrete"}});
    secret = secret_to_json(s);
  } else if (scenario == "clwe") {
    const SecretVector s = draw_secret(kind_or(c, SecretKind::kUnitSphere), c, rng);
    out.batch = gen_clwe(ClweParams{c.n, c.m, c.gamma, c.beta, s.kind}, s, count, rng).erase();
    params.update({{"gamma", c.gamma}, {"beta", c.beta}});
    secret = secret_to_json(s);
  } else if (scenario == "hclwe") {
    const SecretVector s = draw_secret(kind_or(c, SecretKind::kUnitSphere), c, rng);
    const int g = c.g > 0 ? c.g : g_for(c.gamma, std::max(2, c.m));
    const MixtureSpec spec = package_gmm(s, c.gamma, c.beta, g);
    out.batch = points_to_batch(gen_trunc_hclwe(spec, count, rng));
    params.update({{"gamma", c.gamma}, {"beta", c.beta}, {"g", g}});
    secret = secret_to_json(s);
  } else if (scenario == "null-lwe") {
    out.batch = gen_null(NullRegime::kDiscreteLwe, c.n, count, static_cast<double>(c.q), rng);
    params.update({{"q", c.q}});
  } else if (scenario == "null-clwe") {
    out.batch = gen_null(NullRegime::kClwe, c.n, count, 1.0, rng);
  } else if (scenario == "null-gaussian") {
    std::vector<std::vector<double>> points(count);
    const GaussianParam unit = GaussianParam::Centered(1.0, c.n);
    for (auto& p : points) p = sample_continuous_gaussian(unit, rng);
    out.batch = points_to_batch(points);
  } else if (scenario == "sparse-lwe") {
    const SparseReductionParams sp{c.n, c.k, c.m, c.ell, c.q, c.sigma, c.c_slack};
    RngStream oracle_rng = rng.split(1);
    RngStream phi_rng = rng.split(2);
    const MatrixLweInstance inst = sample_matrix_lwe(c.m, c.ell, c.n, c.q, c.sigma, oracle_rng);
    SparseReductionResult red = sparse_reduction_driver(inst.B, sp, phi_rng);
    out.batch = red.samples.erase();
    std::vector<double> z(red.randomness.z.begin(), red.randomness.z.end());
    secret = secret_to_json(make_secret(z, SecretKind::kSparse));
    params.update({{"q", c.q},
                   {"k", c.k},
                   {"ell", c.ell},
                   {"sigma", c.sigma},
                   {"output_sigma", sp.output_sigma()}});
    out.transcript["reduction"] = red.transcript;
  }
  out.header.params = params;
  out.transcript["instance"] = out.header.instance;
  out.transcript["scenario"] = scenario;
  out.transcript["seed"] = rng.seed();
  out.transcript["stream"] = rng.stream();
  out.transcript["params"] = params;
  out.transcript["config"] = c.to_json();
  out.transcript["secret"] = secret;
  return out;
}

void write_plant(const PlantResult& planted, const std::string& sample_path,
                 const std::string& transcript_path) {
  write_samples_file(sample_path, planted.batch, planted.header);
  write_json_file(transcript_path, planted.transcript);
}

Interval wilson_interval(std::size_t successes, std::size_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = successes / n;
  const double z2 = z * z;
  const double centre = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / (1.0 + z2 / n);
  // The endpoints at 0 and n successes are exact; avoid rounding residue there.
  return {successes == 0 ? 0.0 : std::max(0.0, centre - half),
          successes == trials ? 1.0 : std::min(1.0, centre + half)};
}

Json AdvantageReport::to_json() const {
  return Json{{"advantage", advantage},
              {"trials", trials},
              {"p_a", p_a},
              {"p_b", p_b},
              {"interval_a", {interval_a.lo, interval_a.hi}},
              {"interval_b", {interval_b.lo, interval_b.hi}},
              {"interval", {interval.lo, interval.hi}}};
}

AdvantageReport estimate_advantage(const Distinguisher& distinguisher,
                                   const BatchGenerator& dist_a,
                                   const BatchGenerator& dist_b, int trials,
                                   const RngStream& rng) {
  if (trials < 100) throw std::invalid_argument("estimate_advantage: need trials >= 100");
  std::size_t hits_a = 0;
  std::size_t hits_b = 0;
  for (int t = 0; t < trials; ++t) {
    for (int arm = 0; arm < 2; ++arm) {
      RngStream child = rng.split(2 * static_cast<std::uint64_t>(t) + arm);
      try {
        const SampleBatch batch = arm == 0 ? dist_a(child) : dist_b(child);
        if (distinguisher(batch)) ++(arm == 0 ? hits_a : hits_b);
      } catch (const std::exception& e) {
        throw std::runtime_error(fmt::format("estimate_advantage: trial {} arm {} failed: {}", t,
                                             arm == 0 ? "a" : "b", e.what()));
      }
    }
  }
  AdvantageReport rep;
  rep.trials = static_cast<std::size_t>(trials);
  rep.p_a = static_cast<double>(hits_a) / trials;
  rep.p_b = static_cast<double>(hits_b) / trials;
  rep.advantage = std::abs(rep.p_a - rep.p_b);
  rep.interval_a = wilson_interval(hits_a, rep.trials);
  rep.interval_b = wilson_interval(hits_b, rep.trials);
  // Newcombe's interval for d = p_a − p_b, then mapped through |·|.
  const double d = rep.p_a - rep.p_b;
  const double lo = d - std::hypot(rep.p_a - rep.interval_a.lo, rep.interval_b.hi - rep.p_b);
  const double hi = d + std::hypot(rep.interval_a.hi - rep.p_a, rep.p_b - rep.interval_b.lo);
  if (lo <= 0.0 && hi >= 0.0) {
    rep.interval = {0.0, std::min(1.0, std::max(-lo, hi))};
  } else {
    rep.interval = {std::min(std::abs(lo), std::abs(hi)),
                    std::min(1.0, std::max(std::abs(lo), std::abs(hi)))};
  }
  return rep;
}

Distinguisher ks_residual_distinguisher(const SecretVector& secret, double gamma,
                                        double beta, double threshold) {
  return [secret, gamma, beta, threshold](const SampleBatch& batch) {
    const std::vector<double> res = residuals(batch, secret, gamma);
    return ks_test(res, wrapped_gaussian_cdf(beta, 1.0), threshold).pass;
  };
}

Json test_report_json(const TestReport& r) {
  return Json{{"name", r.name},
              {"statistic", r.statistic},
              {"p_value", r.p_value},
              {"sample_count", r.sample_count},
              {"threshold", r.threshold},
              {"pass", r.pass}};
}

Json BatteryReport::to_json() const {
  Json tests_json = Json::array();
  for (const TestReport& r : tests) tests_json.push_back(test_report_json(r));
  return Json{{"battery", battery}, {"version", version}, {"pass", pass}, {"tests", tests_json}};
}

BatteryReport verify(const SampleFileHeader& header, const SampleBatch& batch,
                     const Json& transcript, const std::string& battery) {
  if (std::find(kBatteries.begin(), kBatteries.end(), battery) == kBatteries.end()) {
    throw std::invalid_argument("unknown battery '" + battery + "'");
  }
  if (!transcript.contains("instance") ||
      transcript.at("instance").get<std::string>() != header.instance) {
    throw std::invalid_argument("transcript instance does not match the sample file header");
  }
  if (transcript.contains("scenario") && transcript.at("scenario").get<std::string>() != header.kind) {
    throw std::invalid_argument("transcript scenario does not match the sample file kind");
  }
  BatteryReport rep;
  rep.battery = battery;
  if (battery == "clwe-residual") {
    battery_clwe_residual(batch, transcript, &rep);
  } else if (battery == "lwe-residual") {
    battery_lwe_residual(batch, transcript, &rep);
  } else if (battery == "null-clwe") {
    battery_null_clwe(batch, &rep);
  } else if (battery == "null-lwe") {
    battery_null_lwe(batch, &rep);
  } else if (battery == "hclwe-projection") {
    battery_hclwe(batch, transcript, &rep);
  } else if (battery == "sparse-lwe") {
    battery_sparse(batch, transcript, &rep);
  } else {
    battery_gadget(transcript, &rep);
  }
  rep.pass = std::all_of(rep.tests.begin(), rep.tests.end(),
                         [](const TestReport& r) { return r.pass; });
  return rep;
}

BatteryReport verify_files(const std::string& sample_path,
                           const std::string& transcript_path,
                           const std::string& battery) {
  const auto [header, batch] = read_samples_file(sample_path);
  return verify(header, batch, read_json_file(transcript_path), battery);
}

}  // namespace clwe
