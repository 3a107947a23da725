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

#include "eht/modmath.hpp"

#include <stdexcept>

namespace eht {

Residue mod_inverse(std::uint32_t a, std::uint32_t q) {
  a %= q;
  if (a == 0) throw std::domain_error("mod_inverse: zero has no inverse");
  // Extended Euclid on (a, q).
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = q, new_r = a;
  while (new_r != 0) {
    std::int64_t quot = r / new_r;
    std::int64_t tmp = t - quot * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - quot * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) throw std::domain_error("mod_inverse: modulus not coprime");
  if (t < 0) t += q;
  return static_cast<Residue>(t);
}

ModMatrix ModMatrix::identity(std::uint32_t n) {
  ModMatrix m(n, n);
  for (std::uint32_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

std::optional<ModMatrix> matrix_inverse(const ModMatrix& m, std::uint32_t q) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix_inverse: not square");
  const std::uint32_t n = m.rows();
  ModMatrix a = m;
  ModMatrix inv = ModMatrix::identity(n);

  for (std::uint32_t col = 0; col < n; ++col) {
    std::uint32_t pivot = col;
    while (pivot < n && a.at(pivot, col) % q == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    if (pivot != col) {
      for (std::uint32_t c = 0; c < n; ++c) {
        std::swap(a.at(pivot, c), a.at(col, c));
        std::swap(inv.at(pivot, c), inv.at(col, c));
      }
    }
    const std::uint32_t pinv = mod_inverse(a.at(col, col), q);
    for (std::uint32_t c = 0; c < n; ++c) {
      a.at(col, c) = static_cast<Residue>(std::uint64_t(a.at(col, c)) * pinv % q);
      inv.at(col, c) = static_cast<Residue>(std::uint64_t(inv.at(col, c)) * pinv % q);
    }
    for (std::uint32_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const std::uint32_t f = a.at(r, col);
      if (f == 0) continue;
      for (std::uint32_t c = 0; c < n; ++c) {
        std::uint64_t sub = std::uint64_t(f) * a.at(col, c) % q;
        a.at(r, c) = static_cast<Residue>((a.at(r, c) + q - sub) % q);
        sub = std::uint64_t(f) * inv.at(col, c) % q;
        inv.at(r, c) = static_cast<Residue>((inv.at(r, c) + q - sub) % q);
      }
    }
  }
  return inv;
}

std::uint32_t row_dot(std::span<const Residue> row, std::span<const Residue> v,
                      std::uint32_t q) {
  // Partial sums of 128 products stay below 2^32 for q < 2^12.3; chunking
  // keeps the inner loop in 32-bit lanes, which vectorizes well.
  const std::size_t n = row.size();
  std::uint64_t acc = 0;
  std::size_t i = 0;
  if (q <= 4096) {
    while (i + 128 <= n) {
      std::uint32_t part = 0;
      for (std::size_t j = i; j < i + 128; ++j)
        part += std::uint32_t(row[j]) * v[j];
      acc += part;
      i += 128;
    }
  }
  for (; i < n; ++i) acc += std::uint64_t(row[i]) * v[i];
  return static_cast<std::uint32_t>(acc % q);
}

ResidueVec mat_vec_mul(const ModMatrix& m, std::span<const Residue> v, std::uint32_t q) {
  if (m.cols() != v.size()) throw std::invalid_argument("mat_vec_mul: dimension mismatch");
  ResidueVec out(m.rows());
  for (std::uint32_t r = 0; r < m.rows(); ++r)
    out[r] = static_cast<Residue>(row_dot(m.row(r), v, q));
  return out;
}

ModMatrix mat_mul(const ModMatrix& a, const ModMatrix& b, std::uint32_t q) {
  if (a.cols() != b.rows()) throw std::invalid_argument("mat_mul: dimension mismatch");
  ModMatrix out(a.rows(), b.cols());
  for (std::uint32_t r = 0; r < a.rows(); ++r) {
    for (std::uint32_t k = 0; k < a.cols(); ++k) {
      const std::uint64_t f = a.at(r, k);
      if (f == 0) continue;
      for (std::uint32_t c = 0; c < b.cols(); ++c) {
        out.at(r, c) =
            static_cast<Residue>((out.at(r, c) + f * b.at(k, c)) % q);
      }
    }
  }
  return out;
}

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; std::uint64_t(d) * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace eht
