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

#include "support.hpp"

#include "eht/analysis.hpp"

namespace eht::test {

Seed seed_of(std::uint8_t b) {
  Seed s;
  s.fill(b);
  return s;
}

namespace {

ModMatrix minor_of(const ModMatrix& m, std::uint32_t row, std::uint32_t col) {
  ModMatrix out(m.rows() - 1, m.cols() - 1);
  for (std::uint32_t r = 0, rr = 0; r < m.rows(); ++r) {
    if (r == row) continue;
    for (std::uint32_t c = 0, cc = 0; c < m.cols(); ++c) {
      if (c == col) continue;
      out.at(rr, cc++) = m.at(r, c);
    }
    ++rr;
  }
  return out;
}

}  // namespace

std::uint32_t det_cofactor(const ModMatrix& m, std::uint32_t q) {
  const std::uint32_t n = m.rows();
  if (n == 0) return 1 % q;
  if (n == 1) return m.at(0, 0) % q;
  std::uint64_t det = 0;
  for (std::uint32_t c = 0; c < n; ++c) {
    if (m.at(0, c) == 0) continue;
    const std::uint64_t sub = det_cofactor(minor_of(m, 0, c), q);
    const std::uint64_t term = std::uint64_t(m.at(0, c)) * sub % q;
    det = (c % 2 == 0) ? (det + term) % q : (det + q - term) % q;
  }
  return static_cast<std::uint32_t>(det);
}

std::optional<ModMatrix> adjugate_inverse(const ModMatrix& m, std::uint32_t q) {
  const std::uint32_t n = m.rows();
  const std::uint32_t det = det_cofactor(m, q);
  if (det == 0) return std::nullopt;
  const std::uint32_t det_inv = mod_inverse(det, q);
  ModMatrix inv(n, n);
  for (std::uint32_t r = 0; r < n; ++r) {
    for (std::uint32_t c = 0; c < n; ++c) {
      // adj[r][c] = (-1)^(r+c) * det(minor(c, r))
      std::uint64_t cof = det_cofactor(minor_of(m, c, r), q);
      if ((r + c) % 2 == 1) cof = (q - cof) % q;
      inv.at(r, c) = static_cast<Residue>(cof * det_inv % q);
    }
  }
  return inv;
}

double chi_square_stat(std::span<const std::uint64_t> counts) {
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  const double expected = double(total) / double(counts.size());
  double stat = 0.0;
  for (auto c : counts) {
    const double d = double(c) - expected;
    stat += d * d / expected;
  }
  return stat;
}

double chi_square_pvalue(std::span<const std::uint64_t> counts) {
  return gamma_q(double(counts.size() - 1) / 2.0, chi_square_stat(counts) / 2.0);
}

ModMatrix random_matrix(std::uint32_t rows, std::uint32_t cols, std::uint32_t q, Rng& rng) {
  ModMatrix m(rows, cols);
  for (auto& v : m.data()) v = sample_uniform_residue(q, rng);
  return m;
}

}  // namespace eht::test
