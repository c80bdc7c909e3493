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

#include "clwe/cli.h"

#include <cmath>
#include <istream>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "clwe/distributions.h"
#include "clwe/gmm.h"
#include "clwe/harness.h"
#include "clwe/reduce_clwe.h"
#include "clwe/serialization.h"

namespace clwe {
namespace {

// Reads a flat JSON object as CLI11 config. Keys are option names with '_'
// or '-' separators; they are routed to whichever subcommand was invoked.
class FlatJsonConfig : public CLI::Config {
 public:
  explicit FlatJsonConfig(const CLI::App* root) : root_(root) {}

  std::string to_config(const CLI::App*, bool, bool, std::string) const override {
    return "{}";
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    Json j;
    try {
      j = Json::parse(input);
    } catch (const Json::parse_error& e) {
      throw CLI::ConversionError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw CLI::ConversionError("config must be a flat JSON object");
    std::vector<std::string> parents;
    const auto subs = root_->get_subcommands();
    if (!subs.empty()) parents.push_back(subs.front()->get_name());
    std::vector<CLI::ConfigItem> items;
    for (const auto& [key, value] : j.items()) {
      if (value.is_object() || value.is_array()) {
        throw CLI::ConversionError("config value for '" + key + "' must be a scalar");
      }
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = key;
      for (char& c : item.name) {
        if (c == '_') c = '-';
      }
      item.inputs.push_back(value.is_string() ? value.get<std::string>() : value.dump());
      items.push_back(std::move(item));
    }
    return items;
  }

 private:
  const CLI::App* root_;
};

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

void add_scenario_params(CLI::App* sub, ExperimentConfig* c) {
  sub->add_option("--n", c->n, "dimension")->capture_default_str();
  sub->add_option("--m", c->m, "sample count")->capture_default_str();
  sub->add_option("--q", c->q, "modulus")->capture_default_str();
  sub->add_option("--sigma", c->sigma, "error width")->capture_default_str();
  sub->add_option("--k", c->k, "sparsity")->capture_default_str();
  sub->add_option("--r", c->r, "secret norm")->capture_default_str();
  sub->add_option("--gamma", c->gamma, "CLWE frequency")->capture_default_str();
  sub->add_option("--beta", c->beta, "CLWE noise width")->capture_default_str();
  sub->add_option("--c-slack", c->c_slack, "slack constant")->capture_default_str();
  sub->add_option("--g", c->g, "hCLWE components (0: automatic)")->capture_default_str();
  sub->add_option("--ell", c->ell, "matrix-secret rows for sparse-lwe")->capture_default_str();
  sub->add_option("--secret-kind", c->secret_kind, "secret distribution");
}

PipelinePlan plan_from_json(const Json& j, std::int64_t batch_size) {
  if (j.contains("sigma3")) return PipelinePlan::from_json(j);
  const std::int64_t m = j.value("m", batch_size);
  return plan(j.at("n").get<int>(), m, j.at("q").get<std::int64_t>(), j.at("r").get<double>(),
              j.at("sigma").get<double>(), j.value("c_slack", kDefaultSlack));
}

std::string default_transcript(const std::string& sample_path) {
  return sample_path + ".transcript.json";
}

struct ReduceArgs {
  std::string pipeline;
  std::string plan_path;
  std::string in_path;
  std::string out_path;
  std::string transcript_in;
  std::string transcript_out;
  std::uint64_t seed = 0;
};

int run_reduce(const ReduceArgs& a, std::ostream& out, std::ostream& err) {
  const Json plan_json = read_json_file(a.plan_path);
  auto [header, batch] = read_samples_file(a.in_path);
  Json transcript_in;
  if (!a.transcript_in.empty()) {
    transcript_in = read_json_file(a.transcript_in);
    if (transcript_in.value("instance", std::string()) != header.instance) {
      throw std::invalid_argument("transcript instance does not match the input file");
    }
  }
  const bool track = !a.transcript_in.empty() && transcript_in.contains("secret") &&
                     !transcript_in.at("secret").is_null();
  RngStream rng(a.seed);
  SampleFileHeader out_header;
  out_header.seed = a.seed;
  out_header.instance =
      sha256_hex(fmt::format("{}|{}|{}|{}", a.pipeline, a.seed, header.instance,
                             plan_json.dump()))
          .substr(0, 16);
  Json params;
  Json secret = nullptr;
  SampleBatch result;

  if (a.pipeline == "lwe2clwe") {
    const DiscreteLweBatch in = DiscreteLweBatch::from(batch);
    const PipelinePlan p = plan_from_json(plan_json, static_cast<std::int64_t>(in.size()));
    std::optional<SecretVector> s;
    if (track) s = secret_from_json(transcript_in.at("secret"));
    const RotatedClwe rotated = run_pipeline(in, p, rng, s ? &*s : nullptr);
    result = rotated.samples.erase();
    out_header.kind = "clwe";
    params = {{"n", p.n}, {"m", in.size()}, {"gamma", p.gamma}, {"beta", p.beta},
              {"plan", p.to_json()}};
    if (rotated.secret) secret = secret_to_json(*rotated.secret);
  } else if (a.pipeline == "clwe2lwe") {
    const ClweBatch in = ClweBatch::from(batch);
    const auto q = plan_json.at("q").get<std::int64_t>();
    const double tau = plan_json.at("tau").get<double>();
    const double r = plan_json.at("r").get<double>();
    const double beta = plan_json.contains("beta") ? plan_json.at("beta").get<double>()
                                                   : header.params.at("beta").get<double>();
    const ContinuousErrorLweBatch lwe = reverse_discretize(reverse_scale(in, q, tau), tau, rng);
    result = lwe.erase();
    out_header.kind = "lwe";
    const double bq = beta * static_cast<double>(q);
    params = {{"n", in.dim}, {"m", in.size()}, {"q", q}, {"r", r}, {"tau", tau},
              {"error_width", std::sqrt(bq * bq + r * r * tau * tau)}};
    if (track) {
      secret = secret_to_json(reverse_secret(secret_from_json(transcript_in.at("secret")), r));
    }
  } else {
    throw CLI::ValidationError("--pipeline", "must be lwe2clwe or clwe2lwe");
  }
  out_header.params = params;
  write_samples_file(a.out_path, result, out_header);
  Json summary = {{"pipeline", a.pipeline}, {"out", a.out_path}, {"instance", out_header.instance},
                  {"kind", out_header.kind}, {"count", result.samples.size()},
                  {"params", params}};
  if (!a.transcript_in.empty()) {
    const std::string path =
        a.transcript_out.empty() ? default_transcript(a.out_path) : a.transcript_out;
    Json t = {{"instance", out_header.instance}, {"scenario", out_header.kind},
              {"seed", a.seed}, {"params", params}, {"secret", secret},
              {"parent", header.instance}};
    write_json_file(path, t);
    summary["transcript"] = path;
  }
  err << fmt::format("clwe reduce: wrote {} samples to {}\n", result.samples.size(), a.out_path);
  emit(out, summary);
  return kExitOk;
}

Json solver_json(const SolverResult& r, const SolverParams& p) {
  Json top = Json::array();
  for (const CandidateScore& c : r.top) top.push_back({{"secret", c.secret}, {"passes", c.passes}});
  return Json{{"secret", r.secret ? Json(r.secret->entries) : Json("none")},
              {"ambiguous", r.ambiguous},
              {"candidates", r.candidates},
              {"passing", r.passing},
              {"params", p.to_json()},
              {"histogram", r.histogram},
              {"top", top},
              {"pass_counts", r.pass_counts}};
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Executable reductions between LWE, sparse LWE, CLWE, hCLWE and GMM instances",
               "clwe"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.set_config("--config", "", "flat JSON file of option values");
  app.config_formatter(std::make_shared<FlatJsonConfig>(&app));
  app.allow_config_extras(CLI::config_extras_mode::error);

  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "decimal 64-bit seed")->capture_default_str();

  ExperimentConfig cfg;
  auto* sample = app.add_subcommand("sample", "plant an instance and write samples + transcript");
  sample->add_option("--scenario", cfg.scenario, "scenario")
      ->required()
      ->check(CLI::IsMember(kScenarios));
  add_scenario_params(sample, &cfg);
  sample->add_option("--out", cfg.out_path, "sample file (JSONL)")->required();
  sample->add_option("--transcript", cfg.transcript_path, "transcript path");

  ReduceArgs red;
  auto* reduce = app.add_subcommand("reduce", "apply a reduction to a sample file");
  reduce->add_option("--pipeline", red.pipeline, "lwe2clwe or clwe2lwe")
      ->required()
      ->check(CLI::IsMember({"lwe2clwe", "clwe2lwe"}));
  reduce->add_option("--plan", red.plan_path, "plan JSON")->required()->check(CLI::ExistingFile);
  reduce->add_option("--in", red.in_path, "input samples")->required()->check(CLI::ExistingFile);
  reduce->add_option("--out", red.out_path, "output samples")->required();
  reduce->add_option("--transcript", red.transcript_in, "transcript of the input, to track the secret")
      ->check(CLI::ExistingFile);
  reduce->add_option("--transcript-out", red.transcript_out, "transcript of the output");

  std::string solve_in;
  int solve_n = 0;
  int solve_k = 0;
  double solve_gamma = 0.0;
  double solve_beta = 0.0;
  int solve_m = 0;
  double solve_mult = 1.0;
  auto* solve = app.add_subcommand("solve", "brute-force sparse hCLWE solver");
  solve->add_option("--in", solve_in, "hCLWE samples")->required()->check(CLI::ExistingFile);
  solve->add_option("--n", solve_n, "dimension")->required();
  solve->add_option("--k", solve_k, "sparsity")->required();
  solve->add_option("--gamma", solve_gamma, "frequency")->required();
  solve->add_option("--beta", solve_beta, "noise width")->required();
  solve->add_option("--m", solve_m, "samples to use (0: formula)")->capture_default_str();
  solve->add_option("--m-multiplier", solve_mult, "scale of the formula's m")->capture_default_str();

  std::string verify_in;
  std::string verify_transcript;
  std::string battery;
  auto* verify_cmd = app.add_subcommand("verify", "run a test battery on a sample file");
  verify_cmd->add_option("--in", verify_in, "samples")->required()->check(CLI::ExistingFile);
  verify_cmd->add_option("--transcript", verify_transcript, "transcript")
      ->required()
      ->check(CLI::ExistingFile);
  verify_cmd->add_option("--battery", battery, "battery name")
      ->required()
      ->check(CLI::IsMember(kBatteries));

  ExperimentConfig adv;
  adv.batch = 1000;
  adv.trials = 200;
  auto* advantage = app.add_subcommand(
      "advantage", "advantage of the residual-KS distinguisher, CLWE against its null");
  advantage->add_option("--n", adv.n, "dimension")->capture_default_str();
  advantage->add_option("--gamma", adv.gamma, "frequency")->capture_default_str();
  advantage->add_option("--beta", adv.beta, "noise width")->capture_default_str();
  advantage->add_option("--batch", adv.batch, "samples per batch")->capture_default_str();
  advantage->add_option("--trials", adv.trials, "trials per arm")->capture_default_str();
  advantage->add_option("--secret-kind", adv.secret_kind, "secret distribution");

  std::string params_scenario;
  ExperimentConfig pc;
  pc.n = 8;
  pc.m = 100;
  pc.q = 1 << 20;
  pc.sigma = 16.0;
  double alpha = 2.0;
  double delta = 0.5;
  int solver_m = 0;
  double solver_mult = 1.0;
  auto* params = app.add_subcommand("params", "print derived parameters");
  params->add_option("--scenario", params_scenario, "fixed-norm, solver, gmm-poly or gmm-subexp")
      ->required()
      ->check(CLI::IsMember({"fixed-norm", "solver", "gmm-poly", "gmm-subexp"}));
  params->add_option("--n", pc.n, "dimension")->capture_default_str();
  params->add_option("--m", pc.m, "sample count")->capture_default_str();
  params->add_option("--q", pc.q, "modulus")->capture_default_str();
  params->add_option("--r", pc.r, "secret norm")->capture_default_str();
  params->add_option("--sigma", pc.sigma, "error width")->capture_default_str();
  params->add_option("--c-slack", pc.c_slack, "slack constant")->capture_default_str();
  params->add_option("--k", pc.k, "sparsity")->capture_default_str();
  params->add_option("--gamma", pc.gamma, "frequency")->capture_default_str();
  params->add_option("--beta", pc.beta, "noise width")->capture_default_str();
  params->add_option("--ell", pc.ell, "LWE dimension for the GMM presets")->capture_default_str();
  params->add_option("--alpha", alpha, "gmm-poly exponent")->capture_default_str();
  params->add_option("--delta", delta, "gmm-subexp exponent")->capture_default_str();
  params->add_option("--solver-m", solver_m, "solver sample count (0: formula)");
  params->add_option("--m-multiplier", solver_mult, "scale of the solver's m")->capture_default_str();

  try {
    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "clwe: " << e.what() << '\n' << app.help();
    return kExitUsage;
  }

  try {
    if (app.got_subcommand(sample)) {
      cfg.seed = seed;
      RngStream rng(seed);
      const PlantResult planted = plant(cfg.scenario, cfg, rng);
      const std::string tpath =
          cfg.transcript_path.empty() ? default_transcript(cfg.out_path) : cfg.transcript_path;
      write_plant(planted, cfg.out_path, tpath);
      err << fmt::format("clwe sample: wrote {} {} samples to {}\n", planted.batch.samples.size(),
                         cfg.scenario, cfg.out_path);
      emit(out, {{"scenario", cfg.scenario}, {"out", cfg.out_path}, {"transcript", tpath},
                 {"instance", planted.header.instance}, {"count", planted.batch.samples.size()},
                 {"params", planted.header.params}});
      return kExitOk;
    }
    if (app.got_subcommand(reduce)) {
      red.seed = seed;
      return run_reduce(red, out, err);
    }
    if (app.got_subcommand(solve)) {
      const auto [header, batch] = read_samples_file(solve_in);
      if (batch.a_domain != ADomain::kGaussian) {
        throw std::invalid_argument("solve expects real-valued points");
      }
      const SolverParams p =
          make_solver_params(solve_n, solve_k, solve_gamma, solve_beta, solve_m, solve_mult);
      const SolverResult r = solve_sparse_hclwe(batch_to_points(batch), p);
      err << fmt::format("clwe solve: {} candidates, {} passing\n", r.candidates, r.passing);
      emit(out, solver_json(r, p));
      return kExitOk;
    }
    if (app.got_subcommand(verify_cmd)) {
      const BatteryReport rep = verify_files(verify_in, verify_transcript, battery);
      err << fmt::format("clwe verify: battery {} {}\n", battery, rep.pass ? "passed" : "failed");
      emit(out, rep.to_json());
      return rep.pass ? kExitOk : kExitTestFailure;
    }
    if (app.got_subcommand(advantage)) {
      adv.scenario = "clwe";
      adv.m = adv.batch;
      adv.validate();
      RngStream rng(seed);
      RngStream secret_rng = rng.split(0);
      const SecretKind kind =
          adv.secret_kind.empty() ? SecretKind::kUnitSphere : parse_secret_kind(adv.secret_kind);
      if (kind != SecretKind::kUnitSphere) {
        throw std::invalid_argument("advantage supports the unit-sphere secret only");
      }
      const SecretVector s = sample_sphere_secret(adv.n, secret_rng);
      const ClweParams cp{adv.n, adv.batch, adv.gamma, adv.beta, s.kind};
      const auto count = static_cast<std::size_t>(adv.batch);
      const int n = adv.n;
      const AdvantageReport rep = estimate_advantage(
          ks_residual_distinguisher(s, adv.gamma, adv.beta),
          [&](RngStream& r) { return gen_clwe(cp, s, count, r).erase(); },
          [&](RngStream& r) { return gen_null(NullRegime::kClwe, n, count, 1.0, r); },
          adv.trials, rng.split(1));
      Json j = rep.to_json();
      j["distinguisher"] = "residual-ks";
      j["batch"] = adv.batch;
      emit(out, j);
      return kExitOk;
    }
    if (app.got_subcommand(params)) {
      Json j;
      if (params_scenario == "fixed-norm") {
        j = plan(pc.n, pc.m, pc.q, pc.r, pc.sigma, pc.c_slack).to_json();
      } else if (params_scenario == "solver") {
        j = make_solver_params(pc.n, pc.k, pc.gamma, pc.beta, solver_m, solver_mult).to_json();
      } else {
        const bool poly = params_scenario == "gmm-poly";
        const std::int64_t m = params->count("--m") > 0 ? pc.m : 0;
        j = gmm_experiment_params(poly ? "poly" : "subexp", pc.ell, poly ? alpha : delta, m,
                                  pc.c_slack)
                .to_json();
      }
      emit(out, j);
      return kExitOk;
    }
  } catch (const CLI::Error& e) {
    err << "clwe: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "clwe: error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace clwe
