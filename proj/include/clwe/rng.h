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

#ifndef CLWE_RNG_H_
#define CLWE_RNG_H_

#include <array>
#include <cstdint>

namespace clwe {

// Philox4x32-10 (Salmon et al., SC'11), as a plain function.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

// Counter-based random stream. The 64-bit seed is the Philox key; the counter
// holds (block position, stream id), so streams with different ids never
// overlap and any draw is addressable. A stream is single-owner; give each
// worker its own via split().
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0);

  // Independent child stream, deterministic in (seed, stream, child).
  RngStream split(std::uint64_t child) const;

  std::uint32_t next_u32();
  std::uint64_t next_u64();
  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Uniform on {0, ..., bound - 1}; bound > 0.
  std::uint64_t uniform_int(std::uint64_t bound);
  // Standard normal N(0, 1) (Box–Muller). Callers rescale to ρ-widths.
  double normal();

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }
  // Number of 32-bit words consumed so far.
  std::uint64_t position() const { return block_ * 4 + index_ - 4; }

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  int index_ = 4;
  std::array<std::uint32_t, 4> buffer_{};
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

// SplitMix64 finalizer; used for deriving stream ids and per-trial seeds.
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace clwe

#endif  // CLWE_RNG_H_
