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

#include "eht/codec.hpp"

#include <cstring>
#include <fstream>

#include "eht/sampling.hpp"

namespace eht {

// ---- bit packing ----------------------------------------------------------

Bytes pack_values(std::span<const std::uint32_t> values, std::uint32_t width) {
  if (width == 0 || width > 32) throw std::invalid_argument("pack: bad width");
  Bytes out(packed_bytes(values.size(), width), 0);
  const std::uint64_t limit = std::uint64_t(1) << width;
  std::size_t bitpos = 0;
  for (std::uint32_t v : values) {
    if (v >= limit) throw std::invalid_argument("pack: value out of range");
    std::uint32_t left = width;
    std::uint32_t val = v;
    while (left > 0) {
      const std::size_t byte = bitpos / 8;
      const std::uint32_t off = bitpos % 8;
      const std::uint32_t take = std::min(8 - off, left);
      out[byte] |= static_cast<std::uint8_t>((val & ((1u << take) - 1)) << off);
      val >>= take;
      left -= take;
      bitpos += take;
    }
  }
  return out;
}

Bytes pack_residues(std::span<const Residue> values, std::uint32_t width) {
  std::vector<std::uint32_t> tmp(values.begin(), values.end());
  return pack_values(tmp, width);
}

std::vector<std::uint32_t> unpack_values(std::span<const std::uint8_t> bytes,
                                         std::size_t count, std::uint32_t width) {
  if (width == 0 || width > 32) throw std::invalid_argument("unpack: bad width");
  if (bytes.size() < packed_bytes(count, width))
    throw FormatError("unpack: input too short");
  std::vector<std::uint32_t> out(count);
  std::size_t bitpos = 0;
  for (std::size_t i = 0; i < count; ++i) {
    std::uint32_t v = 0;
    std::uint32_t got = 0;
    while (got < width) {
      const std::size_t byte = bitpos / 8;
      const std::uint32_t off = bitpos % 8;
      const std::uint32_t take = std::min(8 - off, width - got);
      v |= ((bytes[byte] >> off) & ((1u << take) - 1)) << got;
      got += take;
      bitpos += take;
    }
    out[i] = v;
  }
  return out;
}

ResidueVec unpack_residues(std::span<const std::uint8_t> bytes, std::size_t count,
                           std::uint32_t width) {
  const auto vals = unpack_values(bytes, count, width);
  ResidueVec out(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (vals[i] >= (1u << 16)) throw FormatError("unpack: residue too wide");
    out[i] = static_cast<Residue>(vals[i]);
  }
  return out;
}

// ---- redundancy code -------------------------------------------------------

RedundancyCode RedundancyCode::derive(std::uint32_t n, std::uint32_t q,
                                      const std::array<std::uint8_t, 8>& code_id) {
  Seed s{};
  std::memcpy(s.data(), code_id.data(), code_id.size());
  std::memcpy(s.data() + 8, code_id.data(), code_id.size());
  Rng rng(s, "code");
  RedundancyCode c;
  c.n_ = n;
  c.q_ = q;
  c.h1_.resize(n - 2);
  c.h2_.resize(n - 2);
  for (auto& v : c.h1_) v = static_cast<Residue>(1 + rng.uniform_below(q - 1));
  for (auto& v : c.h2_) v = static_cast<Residue>(1 + rng.uniform_below(q - 1));
  return c;
}

RedundancyCode RedundancyCode::from_rows(std::uint32_t n, std::uint32_t q, ResidueVec h1,
                                         ResidueVec h2) {
  if (h1.size() != n - 2 || h2.size() != n - 2)
    throw std::invalid_argument("RedundancyCode: parity rows must have length n-2");
  RedundancyCode c;
  c.n_ = n;
  c.q_ = q;
  c.h1_ = std::move(h1);
  c.h2_ = std::move(h2);
  return c;
}

std::size_t RedundancyCode::capacity_bytes() const {
  return std::size_t(n_ - 2) * info_bits(q_) / 8;
}

ResidueVec RedundancyCode::encode(std::span<const std::uint8_t> msg) const {
  if (msg.size() != capacity_bytes())
    throw std::invalid_argument("encode: message must be exactly " +
                                std::to_string(capacity_bytes()) + " bytes");
  const std::uint32_t w = info_bits(q_);
  // (n-2)*w bits may exceed 8*capacity; the tail residues are zero-padded.
  Bytes padded(packed_bytes(n_ - 2, w), 0);
  std::memcpy(padded.data(), msg.data(), msg.size());
  ResidueVec x = unpack_residues(padded, n_ - 2, w);
  x.resize(n_);
  std::uint64_t p1 = 0, p2 = 0;
  for (std::uint32_t j = 0; j < n_ - 2; ++j) {
    p1 += std::uint64_t(h1_[j]) * x[j];
    p2 += std::uint64_t(h2_[j]) * x[j];
    if ((j & 63) == 63) {
      p1 %= q_;
      p2 %= q_;
    }
  }
  x[n_ - 2] = static_cast<Residue>(p1 % q_);
  x[n_ - 1] = static_cast<Residue>(p2 % q_);
  return x;
}

bool RedundancyCode::is_codeword(std::span<const Residue> x) const {
  if (x.size() != n_) return false;
  std::uint64_t p1 = 0, p2 = 0;
  for (std::uint32_t j = 0; j < n_ - 2; ++j) {
    p1 += std::uint64_t(h1_[j]) * x[j];
    p2 += std::uint64_t(h2_[j]) * x[j];
    if ((j & 63) == 63) {
      p1 %= q_;
      p2 %= q_;
    }
  }
  return p1 % q_ == x[n_ - 2] && p2 % q_ == x[n_ - 1];
}

std::optional<Bytes> RedundancyCode::check_and_decode(std::span<const Residue> x) const {
  if (!is_codeword(x)) return std::nullopt;
  const std::uint32_t w = info_bits(q_);
  const std::uint32_t lim = 1u << w;
  std::vector<std::uint32_t> info(n_ - 2);
  for (std::uint32_t j = 0; j < n_ - 2; ++j) {
    if (x[j] >= lim) return std::nullopt;  // not produced by encode()
    info[j] = x[j];
  }
  Bytes packed = pack_values(info, w);
  packed.resize(capacity_bytes());
  return packed;
}

// ---- file header ------------------------------------------------------------

Bytes FileHeader::serialize() const {
  if (params_name.size() > 14)
    throw std::invalid_argument("FileHeader: params name too long");
  Bytes out(kSize, 0);
  std::memcpy(out.data(), kMagic.data(), 4);
  out[4] = kVersion;
  out[5] = static_cast<std::uint8_t>(kind);
  std::memcpy(out.data() + 6, params_name.data(), params_name.size());
  std::memcpy(out.data() + 20, code_id.data(), 8);
  return out;
}

FileHeader FileHeader::parse(std::span<const std::uint8_t> bytes, char expected_kind) {
  if (bytes.size() < kSize) throw FormatError("file too short for header");
  if (std::memcmp(bytes.data(), kMagic.data(), 4) != 0)
    throw FormatError("bad magic");
  if (bytes[4] != kVersion) throw FormatError("unsupported version");
  FileHeader h;
  h.kind = static_cast<char>(bytes[5]);
  if (h.kind != expected_kind)
    throw FormatError(std::string("expected file kind '") + expected_kind + "', found '" +
                      h.kind + "'");
  const char* name = reinterpret_cast<const char*>(bytes.data() + 6);
  std::size_t len = 0;
  while (len < 14 && name[len] != 0) ++len;
  h.params_name.assign(name, len);
  std::memcpy(h.code_id.data(), bytes.data() + 20, 8);
  return h;
}

// ---- sizes -------------------------------------------------------------------

std::size_t public_key_packed_bytes(const ParameterSet& p) {
  return packed_bytes(std::size_t(p.kn()) * p.n, residue_bits(p.q));
}

std::size_t plaintext_packed_bytes(const ParameterSet& p) {
  return packed_bytes(p.n, residue_bits(p.q));
}

std::size_t ciphertext_packed_bytes(const ParameterSet& p) {
  return packed_bytes(p.kn(), residue_bits(p.q));
}

std::size_t private_key_packed_bytes(const ParameterSet& p) {
  const std::uint32_t w = residue_bits(p.q);
  const std::uint32_t wi = index_bits(p.kn());
  return packed_bytes(std::size_t(p.n) * p.n, w) +      // B
         packed_bytes(std::size_t(p.k) * p.n, w) +      // t table
         2 * packed_bytes(p.kn(), wi) +                 // P*, Q
         packed_bytes(2 * std::size_t(p.n - 2), w);     // parity rows
}

// ---- file IO -------------------------------------------------------------------

Bytes read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path + "'");
  Bytes data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return data;
}

void write_file(const std::string& path, std::span<const std::uint8_t> data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot create '" + path + "'");
  out.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size()));
  if (!out) throw FormatError("write failed for '" + path + "'");
}

}  // namespace eht
