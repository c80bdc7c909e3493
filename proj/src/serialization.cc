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

#include "clwe/serialization.h"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>
#include <openssl/sha.h>

namespace clwe {

std::string format_real(double x) { return fmt::format("{:.17g}", x); }

namespace {

void append_value(std::string* line, double x, bool integral) {
  if (integral) {
    *line += fmt::format("{}", static_cast<std::int64_t>(x));
  } else {
    *line += format_real(x);
  }
}

}  // namespace

void write_samples(std::ostream& out, const SampleBatch& batch,
                   const SampleFileHeader& header) {
  Json h = {{"format", "clwe-samples"},
            {"version", kSampleFormatVersion},
            {"kind", header.kind},
            {"a_domain", a_domain_name(batch.a_domain)},
            {"b_domain", b_domain_name(batch.b_domain)},
            {"modulus", batch.modulus},
            {"dim", batch.dim},
            {"count", batch.samples.size()},
            {"seed", header.seed},
            {"params", header.params},
            {"instance", header.instance}};
  out << h.dump() << '\n';
  const bool int_a = batch.a_domain == ADomain::kZq;
  const bool int_b = batch.b_domain == BDomain::kZq;
  std::string line;
  for (const Sample& s : batch.samples) {
    line = "{\"a\":[";
    for (std::size_t i = 0; i < s.a.size(); ++i) {
      if (i > 0) line += ',';
      append_value(&line, s.a[i], int_a);
    }
    line += "],\"b\":";
    append_value(&line, s.b, int_b);
    line += "}\n";
    out << line;
  }
  if (!out) throw std::runtime_error("write_samples: stream failure");
}

std::pair<SampleFileHeader, SampleBatch> read_samples(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("read_samples: empty input");
  Json h;
  try {
    h = Json::parse(line);
  } catch (const Json::exception& e) {
    throw std::runtime_error(std::string("read_samples: bad header: ") + e.what());
  }
  if (h.value("format", "") != "clwe-samples") {
    throw std::runtime_error("read_samples: not a clwe-samples file");
  }
  if (h.value("version", 0) != kSampleFormatVersion) {
    throw std::runtime_error("read_samples: unsupported format version");
  }
  SampleFileHeader header;
  header.kind = h.value("kind", "");
  header.seed = h.value("seed", std::uint64_t{0});
  header.params = h.value("params", Json::object());
  header.instance = h.value("instance", "");
  SampleBatch batch;
  batch.a_domain = parse_a_domain(h.at("a_domain").get<std::string>());
  batch.b_domain = parse_b_domain(h.at("b_domain").get<std::string>());
  batch.modulus = h.at("modulus").get<double>();
  batch.dim = h.at("dim").get<std::size_t>();
  const auto count = h.at("count").get<std::size_t>();
  batch.samples.reserve(count);
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      const Json r = Json::parse(line);
      Sample s;
      s.a = r.at("a").get<std::vector<double>>();
      s.b = r.at("b").get<double>();
      batch.samples.push_back(std::move(s));
    } catch (const Json::exception& e) {
      throw std::runtime_error(fmt::format("read_samples: line {}: {}", lineno, e.what()));
    }
  }
  if (batch.samples.size() != count) {
    throw std::runtime_error(fmt::format(
        "read_samples: header promises {} records, found {}", count, batch.samples.size()));
  }
  batch.validate();
  return {std::move(header), std::move(batch)};
}

void write_samples_file(const std::string& path, const SampleBatch& batch,
                        const SampleFileHeader& header) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  write_samples(out, batch, header);
}

std::pair<SampleFileHeader, SampleBatch> read_samples_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  return read_samples(in);
}

SampleBatch points_to_batch(const std::vector<std::vector<double>>& points) {
  SampleBatch batch;
  batch.a_domain = ADomain::kGaussian;
  batch.b_domain = BDomain::kTq;
  batch.modulus = 1.0;
  batch.dim = points.empty() ? 0 : points.front().size();
  for (const auto& p : points) batch.samples.push_back(Sample{p, 0.0});
  batch.validate();
  return batch;
}

std::vector<std::vector<double>> batch_to_points(const SampleBatch& batch) {
  std::vector<std::vector<double>> out;
  out.reserve(batch.samples.size());
  for (const Sample& s : batch.samples) out.push_back(s.a);
  return out;
}

Json secret_to_json(const SecretVector& s) {
  return Json{{"kind", secret_kind_name(s.kind)},
              {"entries", s.entries},
              {"norm", s.norm},
              {"k", s.k}};
}

SecretVector secret_from_json(const Json& j) {
  try {
    return make_secret(j.at("entries").get<std::vector<double>>(),
                       parse_secret_kind(j.at("kind").get<std::string>()));
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string("bad secret record: ") + e.what());
  }
}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[SHA256_DIGEST_LENGTH];
  SHA256(reinterpret_cast<const unsigned char*>(data.data()), data.size(), digest);
  std::string hex;
  hex.reserve(2 * SHA256_DIGEST_LENGTH);
  for (unsigned char c : digest) hex += fmt::format("{:02x}", c);
  return hex;
}

std::string digest_reals(const std::vector<double>& values) {
  std::string buf;
  for (double v : values) {
    buf += format_real(v);
    buf += '\n';
  }
  return sha256_hex(buf);
}

std::string digest_ints(const std::vector<std::int64_t>& values) {
  std::string buf;
  for (std::int64_t v : values) {
    buf += fmt::format("{}\n", v);
  }
  return sha256_hex(buf);
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw std::runtime_error("bad JSON in " + path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace clwe
