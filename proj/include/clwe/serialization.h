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

#ifndef CLWE_SERIALIZATION_H_
#define CLWE_SERIALIZATION_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "clwe/distributions.h"
#include "clwe/samplers.h"

namespace clwe {

using Json = nlohmann::json;

inline constexpr int kSampleFormatVersion = 1;

// First line of every sample file.
struct SampleFileHeader {
  std::string kind;  // e.g. "lwe", "clwe", "hclwe", "null-clwe", "sparse-lwe"
  std::uint64_t seed = 0;
  Json params = Json::object();
  // Links the file to its transcript.
  std::string instance;
};

// Newline-delimited JSON: a header record followed by one {"a": [...], "b": x}
// record per sample. Residues in ℤ_q are written as integers, reals with 17
// significant digits.
void write_samples(std::ostream& out, const SampleBatch& batch,
                   const SampleFileHeader& header);
std::pair<SampleFileHeader, SampleBatch> read_samples(std::istream& in);

void write_samples_file(const std::string& path, const SampleBatch& batch,
                        const SampleFileHeader& header);
std::pair<SampleFileHeader, SampleBatch> read_samples_file(const std::string& path);

// Real-vector point sets (hCLWE / GMM draws) travel as Gaussian-domain
// batches with b = 0.
SampleBatch points_to_batch(const std::vector<std::vector<double>>& points);
std::vector<std::vector<double>> batch_to_points(const SampleBatch& batch);

Json secret_to_json(const SecretVector& s);
SecretVector secret_from_json(const Json& j);

std::string sha256_hex(const std::string& data);
// Digest of the 17-digit decimal rendering of `values`.
std::string digest_reals(const std::vector<double>& values);
std::string digest_ints(const std::vector<std::int64_t>& values);

std::string format_real(double x);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace clwe

#endif  // CLWE_SERIALIZATION_H_
