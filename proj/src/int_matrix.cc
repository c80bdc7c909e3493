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

#include "clwe/int_matrix.h"

#include <algorithm>
#include <stdexcept>

#include "clwe/numerics.h"

namespace clwe {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::int64_t fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("IntMatrix: ragged rows");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::column(const std::vector<std::int64_t>& v) {
  IntMatrix m(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
  return m;
}

std::vector<std::int64_t> IntMatrix::row(std::size_t i) const {
  return {data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_};
}

std::vector<std::int64_t> IntMatrix::col(std::size_t j) const {
  std::vector<std::int64_t> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

IntMatrix IntMatrix::col_range(std::size_t begin, std::size_t end) const {
  if (begin > end || end > cols_) throw std::out_of_range("IntMatrix: bad column range");
  IntMatrix out(rows_, end - begin);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = begin; j < end; ++j) out(i, j - begin) = (*this)(i, j);
  }
  return out;
}

IntMatrix IntMatrix::hcat(const IntMatrix& other) const {
  if (rows_ != other.rows_) throw std::invalid_argument("IntMatrix::hcat: row mismatch");
  IntMatrix out(rows_, cols_ + other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j);
    for (std::size_t j = 0; j < other.cols_; ++j) out(i, cols_ + j) = other(i, j);
  }
  return out;
}

IntMatrix IntMatrix::vcat(const IntMatrix& other) const {
  if (cols_ != other.cols_) throw std::invalid_argument("IntMatrix::vcat: column mismatch");
  IntMatrix out(rows_ + other.rows_, cols_);
  std::copy(data_.begin(), data_.end(), out.data_.begin());
  std::copy(other.data_.begin(), other.data_.end(), out.data_.begin() + data_.size());
  return out;
}

IntMatrix IntMatrix::operator*(const IntMatrix& other) const {
  if (cols_ != other.rows_) throw std::invalid_argument("IntMatrix: shape mismatch in product");
  IntMatrix out(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t l = 0; l < cols_; ++l) {
      const std::int64_t a = (*this)(i, l);
      if (a == 0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) out(i, j) += a * other(l, j);
    }
  }
  return out;
}

IntMatrix IntMatrix::operator+(const IntMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw std::invalid_argument("IntMatrix: shape mismatch in sum");
  }
  IntMatrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += other.data_[i];
  return out;
}

IntMatrix IntMatrix::operator-(const IntMatrix& other) const {
  return *this + other.scaled(-1);
}

IntMatrix IntMatrix::scaled(std::int64_t c) const {
  IntMatrix out = *this;
  for (auto& x : out.data_) x *= c;
  return out;
}

IntMatrix IntMatrix::mod(std::int64_t q) const {
  IntMatrix out = *this;
  for (auto& x : out.data_) x = mod_q(x, q);
  return out;
}

IntMatrix IntMatrix::mul_mod(const IntMatrix& other, std::int64_t q) const {
  if (cols_ != other.rows_) throw std::invalid_argument("IntMatrix: shape mismatch in product");
  IntMatrix out(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t l = 0; l < cols_; ++l) {
      const std::int64_t a = mod_q((*this)(i, l), q);
      if (a == 0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) {
        out(i, j) = mod_q(out(i, j) + a * mod_q(other(l, j), q), q);
      }
    }
  }
  return out;
}

std::vector<std::int64_t> IntMatrix::apply(const std::vector<std::int64_t>& v) const {
  if (v.size() != cols_) throw std::invalid_argument("IntMatrix::apply: size mismatch");
  std::vector<std::int64_t> out(rows_, 0);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
  }
  return out;
}

std::vector<std::int64_t> IntMatrix::apply_mod(const std::vector<std::int64_t>& v,
                                               std::int64_t q) const {
  if (v.size() != cols_) throw std::invalid_argument("IntMatrix::apply: size mismatch");
  std::vector<std::int64_t> out(rows_, 0);
  for (std::size_t i = 0; i < rows_; ++i) {
    std::int64_t acc = 0;
    for (std::size_t j = 0; j < cols_; ++j) {
      acc = mod_q(acc + mod_q((*this)(i, j), q) * mod_q(v[j], q), q);
    }
    out[i] = acc;
  }
  return out;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](std::int64_t x) { return x == 0; });
}

IntMatrix uniform_matrix_mod(std::size_t rows, std::size_t cols, std::int64_t q,
                             RngStream& rng) {
  if (q < 2) throw std::invalid_argument("uniform_matrix_mod: q must be >= 2");
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      m(i, j) = static_cast<std::int64_t>(rng.uniform_int(q));
    }
  }
  return m;
}

std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t q) {
  std::int64_t result = 1 % q;
  base = mod_q(base, q);
  while (exp > 0) {
    if (exp & 1) result = static_cast<std::int64_t>((static_cast<__int128>(result) * base) % q);
    base = static_cast<std::int64_t>((static_cast<__int128>(base) * base) % q);
    exp >>= 1;
  }
  return result;
}

bool is_prime(std::int64_t q) {
  if (q < 2) return false;
  for (std::int64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) return false;
  }
  return true;
}

std::optional<IntMatrix> inverse_mod_prime(const IntMatrix& a, std::int64_t q) {
  if (a.rows() != a.cols()) throw std::invalid_argument("inverse_mod_prime: not square");
  if (!is_prime(q)) throw std::invalid_argument("inverse_mod_prime: q must be prime");
  const std::size_t n = a.rows();
  IntMatrix work = a.mod(q).hcat(IntMatrix::identity(n));
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && work(pivot, c) == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    if (pivot != c) {
      for (std::size_t j = 0; j < 2 * n; ++j) std::swap(work(c, j), work(pivot, j));
    }
    const std::int64_t inv = pow_mod(work(c, c), q - 2, q);
    for (std::size_t j = 0; j < 2 * n; ++j) work(c, j) = mod_q(work(c, j) * inv, q);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || work(i, c) == 0) continue;
      const std::int64_t f = work(i, c);
      for (std::size_t j = 0; j < 2 * n; ++j) {
        work(i, j) = mod_q(work(i, j) - f * work(c, j), q);
      }
    }
  }
  return work.col_range(n, 2 * n);
}

}  // namespace clwe
