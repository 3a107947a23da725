// Copyright 2026 The EHT Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EHT_MODMATH_HPP_
#define EHT_MODMATH_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

// Exact arithmetic over Z_q for prime q < 2^16. Residues are stored in
// uint16_t; a single product of two residues fits in 32 bits and dot
// products are accumulated in 64 bits, so nothing here can overflow.
// None of this is constant-time.

namespace eht {

using Residue = std::uint16_t;
using ResidueVec = std::vector<Residue>;

// Unique representative x == a (mod q) with |x| <= (q-1)/2.
inline std::int32_t centered(std::uint32_t a, std::uint32_t q) {
  return a <= (q - 1) / 2 ? static_cast<std::int32_t>(a)
                          : static_cast<std::int32_t>(a) - static_cast<std::int32_t>(q);
}

inline Residue reduce_signed(std::int64_t v, std::uint32_t q) {
  std::int64_t r = v % static_cast<std::int64_t>(q);
  if (r < 0) r += q;
  return static_cast<Residue>(r);
}

// Inverse of a mod prime q. Throws std::domain_error when a == 0 (mod q).
Residue mod_inverse(std::uint32_t a, std::uint32_t q);

// Dense row-major matrix over Z_q.
class ModMatrix {
 public:
  ModMatrix() = default;
  ModMatrix(std::uint32_t rows, std::uint32_t cols)
      : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, 0) {}

  std::uint32_t rows() const { return rows_; }
  std::uint32_t cols() const { return cols_; }

  Residue& at(std::uint32_t r, std::uint32_t c) { return a_[std::size_t(r) * cols_ + c]; }
  Residue at(std::uint32_t r, std::uint32_t c) const { return a_[std::size_t(r) * cols_ + c]; }

  std::span<const Residue> row(std::uint32_t r) const {
    return {a_.data() + std::size_t(r) * cols_, cols_};
  }
  std::span<Residue> row(std::uint32_t r) {
    return {a_.data() + std::size_t(r) * cols_, cols_};
  }

  const ResidueVec& data() const { return a_; }
  ResidueVec& data() { return a_; }

  bool operator==(const ModMatrix&) const = default;

  static ModMatrix identity(std::uint32_t n);

 private:
  std::uint32_t rows_ = 0;
  std::uint32_t cols_ = 0;
  ResidueVec a_;
};

// Gauss-Jordan elimination mod q. Returns nullopt when rank < n.
std::optional<ModMatrix> matrix_inverse(const ModMatrix& m, std::uint32_t q);

ModMatrix mat_mul(const ModMatrix& a, const ModMatrix& b, std::uint32_t q);

// Exact product reduced mod q. Throws std::invalid_argument on a
// dimension mismatch.
ResidueVec mat_vec_mul(const ModMatrix& m, std::span<const Residue> v, std::uint32_t q);

// x = B^-1 b for a precomputed inverse.
inline ResidueVec solve_linear(const ModMatrix& b_inv, std::span<const Residue> b,
                               std::uint32_t q) {
  return mat_vec_mul(b_inv, b, q);
}

// Dot product of one matrix row with a vector, reduced mod q.
std::uint32_t row_dot(std::span<const Residue> row, std::span<const Residue> v,
                      std::uint32_t q);

bool is_prime(std::uint32_t n);

}  // namespace eht

#endif  // EHT_MODMATH_HPP_
