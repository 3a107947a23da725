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

#include "eht/sampling.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <random>
#include <stdexcept>

namespace eht {
namespace {

inline std::uint32_t rotl(std::uint32_t v, int c) { return (v << c) | (v >> (32 - c)); }

inline void quarter_round(std::uint32_t& a, std::uint32_t& b, std::uint32_t& c,
                          std::uint32_t& d) {
  a += b; d ^= a; d = rotl(d, 16);
  c += d; b ^= c; b = rotl(b, 12);
  a += b; d ^= a; d = rotl(d, 8);
  c += d; b ^= c; b = rotl(b, 7);
}

void chacha20_block(const std::array<std::uint32_t, 16>& in,
                    std::array<std::uint32_t, 16>& out) {
  out = in;
  for (int i = 0; i < 10; ++i) {
    quarter_round(out[0], out[4], out[8], out[12]);
    quarter_round(out[1], out[5], out[9], out[13]);
    quarter_round(out[2], out[6], out[10], out[14]);
    quarter_round(out[3], out[7], out[11], out[15]);
    quarter_round(out[0], out[5], out[10], out[15]);
    quarter_round(out[1], out[6], out[11], out[12]);
    quarter_round(out[2], out[7], out[8], out[13]);
    quarter_round(out[3], out[4], out[9], out[14]);
  }
  for (int i = 0; i < 16; ++i) out[i] += in[i];
}

inline std::uint32_t load_le32(const std::uint8_t* p) {
  return std::uint32_t(p[0]) | std::uint32_t(p[1]) << 8 | std::uint32_t(p[2]) << 16 |
         std::uint32_t(p[3]) << 24;
}

}  // namespace

Rng::Rng(const Seed& seed, std::string_view label, std::uint64_t instance) {
  input_[0] = 0x61707865;
  input_[1] = 0x3320646e;
  input_[2] = 0x79622d32;
  input_[3] = 0x6b206574;
  for (int i = 0; i < 8; ++i) input_[4 + i] = load_le32(seed.data() + 4 * i);
  input_[12] = 0;  // block counter
  // Nonce: first four bytes of the label, then a 64-bit instance id. Labels
  // longer than four bytes are folded in with xor so distinct labels stay
  // distinct in practice.
  std::uint8_t nonce[12] = {0};
  for (std::size_t i = 0; i < label.size(); ++i)
    nonce[i % 4] ^= static_cast<std::uint8_t>(label[i]) + static_cast<std::uint8_t>(i / 4);
  for (int i = 0; i < 8; ++i) nonce[4 + i] = static_cast<std::uint8_t>(instance >> (8 * i));
  input_[13] = load_le32(nonce);
  input_[14] = load_le32(nonce + 4);
  input_[15] = load_le32(nonce + 8);
}

void Rng::refill() {
  chacha20_block(input_, block_);
  ++input_[12];
  if (input_[12] == 0) throw std::runtime_error("Rng: stream exhausted");
  pos_ = 0;
}

std::uint32_t Rng::next_u32() {
  if (pos_ >= 16) refill();
  return block_[pos_++];
}

std::uint64_t Rng::next_u64() {
  const std::uint64_t lo = next_u32();
  return lo | (std::uint64_t(next_u32()) << 32);
}

std::uint32_t Rng::uniform_below(std::uint32_t bound) {
  if (bound < 2) return 0;
  const std::uint32_t bits = std::bit_width(bound - 1);
  const std::uint32_t mask = bits >= 32 ? ~0u : (1u << bits) - 1;
  for (;;) {
    const std::uint32_t v = next_u32() & mask;
    if (v < bound) return v;
  }
}

double Rng::unit_double() {
  // 53 bits, mapped to (0,1] so log() below is always finite.
  return (double(next_u64() >> 11) + 1.0) * 0x1p-53;
}

double Rng::gaussian(double sigma) {
  const double u1 = unit_double();
  const double u2 = unit_double();
  const double r = std::sqrt(-2.0 * std::log(u1));
  return sigma * r * std::cos(2.0 * M_PI * u2);
}

void Rng::fill_bytes(std::uint8_t* out, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) {
    if (i % 4 == 0 && len - i >= 4) {
      const std::uint32_t w = next_u32();
      std::memcpy(out + i, &w, 4);
      i += 3;
      continue;
    }
    out[i] = static_cast<std::uint8_t>(next_u32() & 0xff);
  }
}

bool gaussian_params_valid(const GaussianParams& gp) {
  return gp.sigma > 0.0 && gp.q >= 2 && gp.sigma < double(gp.q) / 8.0;
}

Residue sample_gaussian_residue(const GaussianParams& gp, Rng& rng) {
  const long v = std::lround(rng.gaussian(gp.sigma));
  return reduce_signed(v, gp.q);
}

Residue sample_uniform_residue(std::uint32_t q, Rng& rng) {
  return static_cast<Residue>(rng.uniform_below(q));
}

std::vector<std::uint32_t> sample_permutation(std::uint32_t size, Rng& rng) {
  std::vector<std::uint32_t> p(size);
  for (std::uint32_t i = 0; i < size; ++i) p[i] = i;
  for (std::uint32_t i = size; i > 1; --i) {
    const std::uint32_t j = rng.uniform_below(i);
    std::swap(p[i - 1], p[j]);
  }
  return p;
}

std::vector<std::uint32_t> invert_permutation(const std::vector<std::uint32_t>& p) {
  std::vector<std::uint32_t> inv(p.size());
  for (std::uint32_t i = 0; i < p.size(); ++i) inv[p[i]] = i;
  return inv;
}

std::optional<Seed> parse_seed_hex(std::string_view hex) {
  if (hex.size() != 64) return std::nullopt;
  Seed s{};
  for (std::size_t i = 0; i < 32; ++i) {
    int hi = -1, lo = -1;
    auto nib = [](char c) -> int {
      if (c >= '0' && c <= '9') return c - '0';
      if (c >= 'a' && c <= 'f') return c - 'a' + 10;
      if (c >= 'A' && c <= 'F') return c - 'A' + 10;
      return -1;
    };
    hi = nib(hex[2 * i]);
    lo = nib(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) return std::nullopt;
    s[i] = static_cast<std::uint8_t>(hi << 4 | lo);
  }
  return s;
}

std::string seed_to_hex(const Seed& seed) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(64);
  for (std::uint8_t b : seed) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 0xf]);
  }
  return out;
}

Seed random_seed() {
  std::random_device rd;
  Seed s{};
  for (std::size_t i = 0; i < s.size(); i += 4) {
    const std::uint32_t w = rd();
    std::memcpy(s.data() + i, &w, 4);
  }
  return s;
}

}  // namespace eht
