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

#ifndef EHT_TESTS_SUPPORT_HPP_
#define EHT_TESTS_SUPPORT_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "eht/keygen.hpp"
#include "eht/modmath.hpp"
#include "eht/sampling.hpp"

namespace eht::test {

// Seed filled with one repeated byte.
Seed seed_of(std::uint8_t b);

// Independent inverse oracle: adjugate over determinant, by cofactor
// expansion. Exponential cost; fine for n <= 6.
std::optional<ModMatrix> adjugate_inverse(const ModMatrix& m, std::uint32_t q);

// Determinant mod q by cofactor expansion.
std::uint32_t det_cofactor(const ModMatrix& m, std::uint32_t q);

// Pearson chi-square statistic against equal cell probabilities.
double chi_square_stat(std::span<const std::uint64_t> counts);

// Upper-tail p-value of that statistic with (cells-1) degrees of freedom.
double chi_square_pvalue(std::span<const std::uint64_t> counts);

// Random matrix over Z_q (not necessarily invertible).
ModMatrix random_matrix(std::uint32_t rows, std::uint32_t cols, std::uint32_t q, Rng& rng);

}  // namespace eht::test

#endif  // EHT_TESTS_SUPPORT_HPP_
