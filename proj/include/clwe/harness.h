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

#ifndef CLWE_HARNESS_H_
#define CLWE_HARNESS_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "clwe/distributions.h"
#include "clwe/numerics.h"
#include "clwe/rng.h"
#include "clwe/serialization.h"

namespace clwe {

// Scenario names accepted by plant().
inline const std::vector<std::string> kScenarios = {
    "lwe", "clwe", "hclwe", "null-lwe", "null-clwe", "null-gaussian", "sparse-lwe"};

// Battery names accepted by verify().
inline const std::vector<std::string> kBatteries = {
    "clwe-residual", "lwe-residual", "null-clwe", "null-lwe",
    "hclwe-projection", "sparse-lwe", "gadget"};

inline constexpr int kBatteryVersion = 1;

struct ExperimentConfig {
  std::string scenario = "clwe";
  int n = 4;
  int m = 1000;              // samples to emit
  std::int64_t q = 1 << 16;
  double sigma = 3.0;
  int k = 2;
  double r = 1.4142135623730951;
  double gamma = 2.0;
  double beta = 0.05;
  double c_slack = kDefaultSlack;
  int g = 0;                 // hCLWE components; 0 picks g_for(γ, m)
  int ell = 1;               // sparse-lwe: rows of the matrix secret's A
  std::string secret_kind;   // empty picks the scenario default
  std::uint64_t seed = 0;
  int trials = 200;
  int batch = 1000;
  std::string in_path;
  std::string out_path;
  std::string transcript_path;

  // Throws std::invalid_argument when a parameter breaks the scenario's
  // preconditions.
  void validate() const;
  Json to_json() const;
  // Keys absent from `j` keep their defaults; unknown keys are rejected.
  static ExperimentConfig from_json(const Json& j);
};

struct PlantResult {
  SampleFileHeader header;
  SampleBatch batch;
  // Planted secret, parameters, seed and instance id. Kept out of the sample
  // file so the file alone does not reveal the secret.
  Json transcript;
};

PlantResult plant(const std::string& scenario, const ExperimentConfig& config,
                  RngStream& rng);

// Writes the sample file and the transcript next to each other.
void write_plant(const PlantResult& planted, const std::string& sample_path,
                 const std::string& transcript_path);

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

// Wilson score interval for `successes` out of `trials` at normal quantile z.
Interval wilson_interval(std::size_t successes, std::size_t trials, double z = 1.959963984540054);

struct AdvantageReport {
  double advantage = 0.0;  // |p̂_a − p̂_b|
  std::size_t trials = 0;
  double p_a = 0.0;
  double p_b = 0.0;
  Interval interval_a;
  Interval interval_b;
  // Interval for |p_a − p_b| from the two Wilson intervals (Newcombe's
  // hybrid score construction), clipped to [0, 1].
  Interval interval;

  Json to_json() const;
};

using Distinguisher = std::function<bool(const SampleBatch&)>;
using BatchGenerator = std::function<SampleBatch(RngStream&)>;

// Trial t draws from `dist_a` with rng.split(2t) and from `dist_b` with
// rng.split(2t + 1). Requires trials >= 100.
AdvantageReport estimate_advantage(const Distinguisher& distinguisher,
                                   const BatchGenerator& dist_a,
                                   const BatchGenerator& dist_b, int trials,
                                   const RngStream& rng);

// Says "planted" when the residuals b − γ⟨a, w⟩ mod 1 are KS-consistent with
// D_β mod 1 at level `threshold`.
Distinguisher ks_residual_distinguisher(const SecretVector& secret, double gamma,
                                        double beta, double threshold = 0.001);

struct BatteryReport {
  std::string battery;
  int version = kBatteryVersion;
  std::vector<TestReport> tests;
  bool pass = true;

  Json to_json() const;
};

// Throws std::invalid_argument when the transcript does not belong to the
// file (instance id or kind mismatch) or the battery is unknown.
BatteryReport verify(const SampleFileHeader& header, const SampleBatch& batch,
                     const Json& transcript, const std::string& battery);
BatteryReport verify_files(const std::string& sample_path,
                           const std::string& transcript_path,
                           const std::string& battery);

Json test_report_json(const TestReport& r);

}  // namespace clwe

#endif  // CLWE_HARNESS_H_
