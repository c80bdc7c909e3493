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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "clwe/cli.h"
#include "clwe/distributions.h"
#include "clwe/rng.h"
#include "clwe/samplers.h"
#include "clwe/serialization.h"
#include "oracle_values.h"

namespace clwe {
namespace {

namespace fs = std::filesystem;

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("clwe_harness_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ExperimentConfig small_config(const std::string& scenario) {
  ExperimentConfig c;
  c.scenario = scenario;
  c.n = 4;
  c.m = 2000;
  c.seed = 11;
  return c;
}

TEST(Plant, RoundTripPassesEveryMatchingBattery) {
  const std::vector<std::pair<std::string, std::string>> cases = {
      {"clwe", "clwe-residual"},   {"lwe", "lwe-residual"},
      {"null-clwe", "null-clwe"},  {"null-lwe", "null-lwe"},
      {"hclwe", "hclwe-projection"}};
  for (const auto& [scenario, battery] : cases) {
    ExperimentConfig c = small_config(scenario);
    if (scenario == "lwe" || scenario == "null-lwe") c.q = 257;
    RngStream rng(c.seed);
    const PlantResult p = plant(scenario, c, rng);
    const BatteryReport r = verify(p.header, p.batch, p.transcript, battery);
    EXPECT_TRUE(r.pass) << scenario << ": " << r.to_json().dump();
    EXPECT_EQ(r.version, kBatteryVersion);
  }
}

TEST(Plant, SparseLweAndGadgets) {
  ExperimentConfig c = small_config("sparse-lwe");
  c.n = 6;
  c.k = 2;
  c.q = 17;
  c.sigma = 10.0;
  c.m = 2000;
  RngStream rng(c.seed);
  const PlantResult p = plant("sparse-lwe", c, rng);
  EXPECT_TRUE(p.transcript.contains("reduction"));
  EXPECT_TRUE(verify(p.header, p.batch, p.transcript, "sparse-lwe").pass);
  EXPECT_TRUE(verify(p.header, p.batch, p.transcript, "gadget").pass);
}

TEST(Plant, FilesAreByteIdenticalAcrossRuns) {
  const fs::path dir = scratch_dir("identical");
  for (int run = 0; run < 2; ++run) {
    ExperimentConfig c = small_config("clwe");
    RngStream rng(c.seed);
    write_plant(plant("clwe", c, rng), (dir / ("s" + std::to_string(run))).string(),
                (dir / ("t" + std::to_string(run))).string());
  }
  EXPECT_EQ(slurp(dir / "s0"), slurp(dir / "s1"));
  EXPECT_EQ(slurp(dir / "t0"), slurp(dir / "t1"));
}

TEST(Plant, SampleFileDoesNotCarryTheSecret) {
  ExperimentConfig c = small_config("clwe");
  RngStream rng(c.seed);
  const PlantResult p = plant("clwe", c, rng);
  EXPECT_FALSE(p.header.params.contains("secret"));
  EXPECT_TRUE(p.transcript.contains("secret"));
  EXPECT_EQ(p.header.instance, p.transcript.at("instance").get<std::string>());
  EXPECT_EQ(p.header.instance.size(), 16u);
}

TEST(Verify, TamperedBFails) {
  ExperimentConfig c = small_config("clwe");
  RngStream rng(c.seed);
  PlantResult p = plant("clwe", c, rng);
  for (Sample& s : p.batch.samples) s.b = mod_positive(s.b + 0.3, 1.0);
  EXPECT_FALSE(verify(p.header, p.batch, p.transcript, "clwe-residual").pass);
}

TEST(Verify, WrongSecretFails) {
  ExperimentConfig c = small_config("clwe");
  RngStream rng(c.seed);
  PlantResult p = plant("clwe", c, rng);
  RngStream other(999);
  p.transcript["secret"] = secret_to_json(sample_sphere_secret(c.n, other));
  EXPECT_FALSE(verify(p.header, p.batch, p.transcript, "clwe-residual").pass);
}

TEST(Verify, TranscriptMismatchThrows) {
  ExperimentConfig c = small_config("clwe");
  RngStream a(1);
  RngStream b(2);
  const PlantResult pa = plant("clwe", c, a);
  const PlantResult pb = plant("clwe", c, b);
  EXPECT_THROW(verify(pa.header, pa.batch, pb.transcript, "clwe-residual"),
               std::invalid_argument);
  EXPECT_THROW(verify(pa.header, pa.batch, pa.transcript, "lwe-residual"),
               std::invalid_argument);
  EXPECT_THROW(verify(pa.header, pa.batch, pa.transcript, "nonsense"), std::invalid_argument);
}

TEST(Config, Validation) {
  ExperimentConfig c = small_config("clwe");
  EXPECT_NO_THROW(c.validate());
  c.beta = -1.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  ExperimentConfig d = small_config("teleport");
  EXPECT_THROW(d.validate(), std::invalid_argument);
}

TEST(Config, JsonRoundTripAndUnknownKeys) {
  ExperimentConfig c = small_config("hclwe");
  c.gamma = 3.5;
  const ExperimentConfig back = ExperimentConfig::from_json(c.to_json());
  EXPECT_EQ(back.to_json(), c.to_json());
  const ExperimentConfig partial = ExperimentConfig::from_json(Json{{"n", 9}});
  EXPECT_EQ(partial.n, 9);
  EXPECT_EQ(partial.m, ExperimentConfig{}.m);
  EXPECT_THROW(ExperimentConfig::from_json(Json{{"dimension", 9}}), std::invalid_argument);
}

TEST(Wilson, MatchesOracle) {
  const Interval mid = wilson_interval(50, 100);
  EXPECT_NEAR(mid.lo, oracle::kWilson50Lo, 1e-12);
  EXPECT_NEAR(mid.hi, oracle::kWilson50Hi, 1e-12);
  const Interval zero = wilson_interval(0, 100);
  EXPECT_DOUBLE_EQ(zero.lo, 0.0);
  EXPECT_NEAR(zero.hi, oracle::kWilson0Hi, 1e-12);
}

SampleBatch tiny_batch(RngStream& rng) {
  SampleBatch b;
  b.dim = 1;
  b.samples.push_back(Sample{{0.0}, rng.uniform()});
  return b;
}

TEST(Advantage, ConstantDistinguisherHasNone) {
  const AdvantageReport r = estimate_advantage([](const SampleBatch&) { return true; },
                                               tiny_batch, tiny_batch, 200, RngStream(5));
  EXPECT_DOUBLE_EQ(r.advantage, 0.0);
  EXPECT_LE(r.interval.lo, 0.0 + 1e-12);
  EXPECT_GT(r.interval.hi, 0.0);
}

TEST(Advantage, DisjointSupportsGiveOne) {
  const BatchGenerator low = [](RngStream& rng) {
    SampleBatch b = tiny_batch(rng);
    b.samples[0].b *= 0.5;
    return b;
  };
  const BatchGenerator high = [](RngStream& rng) {
    SampleBatch b = tiny_batch(rng);
    b.samples[0].b = 0.5 + 0.5 * b.samples[0].b;
    return b;
  };
  const AdvantageReport r = estimate_advantage(
      [](const SampleBatch& b) { return b.samples[0].b < 0.5; }, low, high, 200, RngStream(6));
  EXPECT_DOUBLE_EQ(r.advantage, 1.0);
  EXPECT_GT(r.interval.lo, 0.95);
  EXPECT_THROW(estimate_advantage([](const SampleBatch&) { return true; }, low, high, 99,
                                  RngStream(6)),
               std::invalid_argument);
}

TEST(Advantage, KsDistinguisherSeparatesClwe) {
  RngStream setup(7);
  const SecretVector w = sample_sphere_secret(4, setup);
  const ClweParams params{4, 1000, 2.0, 0.05, SecretKind::kUnitSphere};
  const BatchGenerator planted = [&](RngStream& rng) {
    return gen_clwe(params, w, 1000, rng).erase();
  };
  const BatchGenerator null = [](RngStream& rng) {
    return gen_null(NullRegime::kClwe, 4, 1000, 1.0, rng);
  };
  const AdvantageReport r =
      estimate_advantage(ks_residual_distinguisher(w, 2.0, 0.05), planted, null, 100, RngStream(8));
  EXPECT_GE(r.advantage, 0.9);
  EXPECT_TRUE(r.to_json().contains("interval"));
}

TEST(Advantage, IntervalCoverageAtZero) {
  // Both arms are the same fair coin, so the true advantage is 0.
  int covered = 0;
  const int reps = 1000;
  for (int rep = 0; rep < reps; ++rep) {
    const AdvantageReport r = estimate_advantage(
        [](const SampleBatch& b) { return b.samples[0].b < 0.5; }, tiny_batch, tiny_batch, 100,
        RngStream(1000 + rep));
    covered += r.interval.lo <= 0.0;
  }
  EXPECT_GE(covered, 930);
}

// In-process runs of the command-line tool.
int run_cli(std::vector<std::string> args, std::string* out_text = nullptr) {
  args.insert(args.begin(), "clwe");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str();
  return code;
}

TEST(Cli, ParamsPrintsJson) {
  std::string text;
  ASSERT_EQ(run_cli({"params", "--scenario", "fixed-norm", "--n", "8", "--m", "10000", "--q",
                     "1048576", "--r", "1.4142135623730951", "--sigma", "20"},
                    &text),
            kExitOk);
  const Json j = Json::parse(text);
  EXPECT_TRUE(j.contains("sigma3"));
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run_cli({}), kExitUsage);
  EXPECT_EQ(run_cli({"frobnicate"}), kExitUsage);
  EXPECT_EQ(run_cli({"params", "--scenario", "fixed-norm", "--bogus", "1"}), kExitUsage);
  EXPECT_EQ(run_cli({"params", "--scenario", "solver", "--n", "32", "--k", "2", "--gamma", "1",
                     "--beta", "0.9"}),
            kExitUsage);
  EXPECT_EQ(run_cli({"verify", "--in", "/nonexistent/file", "--transcript", "/nonexistent/t",
                     "--battery", "clwe-residual"}),
            kExitUsage);
}

TEST(Cli, SampleThenVerify) {
  const fs::path dir = scratch_dir("cli");
  const std::string samples = (dir / "clwe.jsonl").string();
  ASSERT_EQ(run_cli({"--seed", "3", "sample", "--scenario", "clwe", "--n", "4", "--m", "2000",
                     "--out", samples}),
            kExitOk);
  ASSERT_TRUE(fs::exists(samples + ".transcript.json"));
  EXPECT_EQ(run_cli({"verify", "--in", samples, "--transcript", samples + ".transcript.json",
                     "--battery", "clwe-residual"}),
            kExitOk);

  // Same file against the wrong secret: the battery fails with exit code 1.
  Json t = read_json_file(samples + ".transcript.json");
  RngStream other(4242);
  t["secret"] = secret_to_json(sample_sphere_secret(4, other));
  const std::string bad = (dir / "bad.transcript.json").string();
  write_json_file(bad, t);
  EXPECT_EQ(run_cli({"verify", "--in", samples, "--transcript", bad, "--battery",
                     "clwe-residual"}),
            kExitTestFailure);
}

TEST(Cli, ConfigFileFeedsSubcommand) {
  const fs::path dir = scratch_dir("config");
  const std::string cfg = (dir / "cfg.json").string();
  const std::string samples = (dir / "s.jsonl").string();
  write_json_file(cfg, Json{{"scenario", "null-clwe"}, {"n", 3}, {"m", 500}, {"out", samples}});
  ASSERT_EQ(run_cli({"--config", cfg, "sample"}), kExitOk);
  const auto [header, batch] = read_samples_file(samples);
  EXPECT_EQ(header.kind, "null-clwe");
  EXPECT_EQ(batch.dim, 3u);
  EXPECT_EQ(batch.samples.size(), 500u);

  write_json_file(cfg, Json{{"scenario", "clwe"}, {"no_such_key", 1}, {"out", samples}});
  EXPECT_EQ(run_cli({"--config", cfg, "sample"}), kExitUsage);
}

}  // namespace
}  // namespace clwe
