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

#ifndef CLWE_INT_MATRIX_H_
#define CLWE_INT_MATRIX_H_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <vector>

#include "clwe/rng.h"

namespace clwe {

// Dense row-major matrix of 64-bit integers. Products are exact over ℤ as
// long as entries stay small; the *_mod variants reduce every partial sum so
// q ≤ 2³¹ never overflows.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols, std::int64_t fill = 0);
  IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix column(const std::vector<std::int64_t>& v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::int64_t& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  std::int64_t operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::vector<std::int64_t> row(std::size_t i) const;
  std::vector<std::int64_t> col(std::size_t j) const;

  IntMatrix transpose() const;
  // Columns [begin, end).
  IntMatrix col_range(std::size_t begin, std::size_t end) const;
  // [*this, other] side by side.
  IntMatrix hcat(const IntMatrix& other) const;
  // [*this; other] stacked.
  IntMatrix vcat(const IntMatrix& other) const;

  IntMatrix operator*(const IntMatrix& other) const;
  IntMatrix operator+(const IntMatrix& other) const;
  IntMatrix operator-(const IntMatrix& other) const;
  IntMatrix scaled(std::int64_t c) const;
  bool operator==(const IntMatrix& other) const = default;

  IntMatrix mod(std::int64_t q) const;
  IntMatrix mul_mod(const IntMatrix& other, std::int64_t q) const;
  std::vector<std::int64_t> apply(const std::vector<std::int64_t>& v) const;
  std::vector<std::int64_t> apply_mod(const std::vector<std::int64_t>& v,
                                      std::int64_t q) const;

  bool is_zero() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> data_;
};

IntMatrix uniform_matrix_mod(std::size_t rows, std::size_t cols, std::int64_t q,
                             RngStream& rng);

// Inverse over ℤ_q for prime q by Gauss–Jordan elimination; nullopt when
// singular.
std::optional<IntMatrix> inverse_mod_prime(const IntMatrix& a, std::int64_t q);

std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t q);
bool is_prime(std::int64_t q);

}  // namespace clwe

#endif  // CLWE_INT_MATRIX_H_
