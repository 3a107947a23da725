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

#ifndef EHT_CODEC_HPP_
#define EHT_CODEC_HPP_

#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "eht/modmath.hpp"
#include "eht/params.hpp"

namespace eht {

using Bytes = std::vector<std::uint8_t>;

// Malformed or truncated serialized material.
struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---- fixed-width bit packing -------------------------------------------

// Bits needed for a residue mod q.
inline std::uint32_t residue_bits(std::uint32_t q) { return std::bit_width(q - 1); }
// Bits carried by one information residue of the redundancy code.
inline std::uint32_t info_bits(std::uint32_t q) { return std::bit_width(q) - 1; }
// Bits needed for an index below `size`.
inline std::uint32_t index_bits(std::uint32_t size) { return std::bit_width(size - 1); }

inline std::size_t packed_bytes(std::size_t count, std::uint32_t width) {
  return (count * width + 7) / 8;
}

// Little-endian packing: value i occupies bit positions [i*width, (i+1)*width),
// bit b of the stream is bit (b%8) of byte (b/8). Values must fit in
// `width` bits (ValueOutOfRange -> std::invalid_argument).
Bytes pack_values(std::span<const std::uint32_t> values, std::uint32_t width);
Bytes pack_residues(std::span<const Residue> values, std::uint32_t width);
std::vector<std::uint32_t> unpack_values(std::span<const std::uint8_t> bytes,
                                         std::size_t count, std::uint32_t width);
ResidueVec unpack_residues(std::span<const std::uint8_t> bytes, std::size_t count,
                           std::uint32_t width);

// ---- plaintext redundancy code ------------------------------------------

// Systematic linear code over Z_q of length n and dimension n-2. A codeword
// (x_1..x_{n-2}, p_1, p_2) satisfies p_t = sum_j h_t[j]*x_j (mod q). The
// two parity rows are pseudorandom with nonzero entries, expanded from an
// 8-byte public code id, so any single perturbed information residue
// violates the first equation.
class RedundancyCode {
 public:
  static RedundancyCode derive(std::uint32_t n, std::uint32_t q,
                               const std::array<std::uint8_t, 8>& code_id);
  static RedundancyCode from_rows(std::uint32_t n, std::uint32_t q, ResidueVec h1,
                                  ResidueVec h2);

  std::uint32_t length() const { return n_; }
  std::uint32_t modulus() const { return q_; }
  const ResidueVec& parity_row(int t) const { return t == 0 ? h1_ : h2_; }

  // Message bytes carried by one codeword: floor((n-2)*floor(log2 q)/8).
  std::size_t capacity_bytes() const;

  // bytes -> codeword of length n. Information residues are below
  // 2^floor(log2 q) < q so the byte packing is exact. Throws
  // std::invalid_argument unless msg.size() == capacity_bytes().
  ResidueVec encode(std::span<const std::uint8_t> msg) const;

  // Verifies both parity equations; nullopt on failure.
  std::optional<Bytes> check_and_decode(std::span<const Residue> x) const;

  bool is_codeword(std::span<const Residue> x) const;

 private:
  std::uint32_t n_ = 0;
  std::uint32_t q_ = 0;
  ResidueVec h1_, h2_;
};

// ---- file formats ---------------------------------------------------------

// All .ehtpub/.ehtprv/.ehtct files start with this fixed 32-byte header.
// The code id is public: encryption needs the redundancy code, so the
// public key carries it.
struct FileHeader {
  static constexpr std::size_t kSize = 32;
  static constexpr std::array<std::uint8_t, 4> kMagic = {'E', 'H', 'T', 'K'};
  static constexpr std::uint8_t kVersion = 1;

  char kind = 0;  // 'P' public key, 'S' private key, 'C' ciphertext
  std::string params_name;
  std::array<std::uint8_t, 8> code_id = {};

  Bytes serialize() const;
  static FileHeader parse(std::span<const std::uint8_t> bytes, char expected_kind);
};

// Packed payload sizes (excluding the header).
std::size_t public_key_packed_bytes(const ParameterSet& p);   // A
std::size_t plaintext_packed_bytes(const ParameterSet& p);    // x
std::size_t ciphertext_packed_bytes(const ParameterSet& p);   // y
std::size_t private_key_packed_bytes(const ParameterSet& p);  // B,t,P*,Q,parity

Bytes read_file(const std::string& path);
void write_file(const std::string& path, std::span<const std::uint8_t> data);

}  // namespace eht

#endif  // EHT_CODEC_HPP_
