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

#ifndef EHT_SAMPLING_HPP_
#define EHT_SAMPLING_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eht/modmath.hpp"

namespace eht {

using Seed = std::array<std::uint8_t, 32>;

// Deterministic random stream: the ChaCha20 keystream keyed by a 32-byte
// seed. The stream label goes into the nonce, so independent substreams
// ("B", "T", "err", ...) are derived from one master seed without any
// correlation. Identical seed+label gives a bit-identical stream on every
// platform.
class Rng {
 public:
  Rng(const Seed& seed, std::string_view label, std::uint64_t instance = 0);

  std::uint32_t next_u32();
  std::uint64_t next_u64();

  // Uniform over [0, bound) by rejection on a power-of-two range; no
  // modulo bias.
  std::uint32_t uniform_below(std::uint32_t bound);

  // Uniform double in (0, 1] with 53 random bits.
  double unit_double();

  // N(0, sigma^2) via Box-Muller. Consumes exactly two uniform doubles.
  double gaussian(double sigma);

  void fill_bytes(std::uint8_t* out, std::size_t len);

 private:
  void refill();

  std::array<std::uint32_t, 16> input_;
  std::array<std::uint32_t, 16> block_;
  std::size_t pos_ = 16;
};

struct GaussianParams {
  double sigma = 0.0;
  std::uint32_t q = 0;
};

// Checks 0 < sigma < q/8 (the statistic needs sigma*lambda well below q).
bool gaussian_params_valid(const GaussianParams& gp);

// round(b) mod q for b ~ N(0, sigma^2); ties round half away from zero.
Residue sample_gaussian_residue(const GaussianParams& gp, Rng& rng);

Residue sample_uniform_residue(std::uint32_t q, Rng& rng);

// Uniform permutation of {0,...,size-1} by Fisher-Yates. perm[i] is the
// image of i.
std::vector<std::uint32_t> sample_permutation(std::uint32_t size, Rng& rng);

std::vector<std::uint32_t> invert_permutation(const std::vector<std::uint32_t>& p);

// 64 hex characters -> 32-byte seed. Returns nullopt on bad input.
std::optional<Seed> parse_seed_hex(std::string_view hex);
std::string seed_to_hex(const Seed& seed);

// Fresh seed from the OS entropy source.
Seed random_seed();

}  // namespace eht

#endif  // EHT_SAMPLING_HPP_
