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

#include <algorithm>

#include "eht/keygen.hpp"

namespace eht {
namespace {

void append(Bytes& out, const Bytes& part) { out.insert(out.end(), part.begin(), part.end()); }

void check_residues(std::span<const Residue> v, std::uint32_t q, const char* what) {
  for (Residue r : v)
    if (r >= q) throw FormatError(std::string(what) + ": residue out of range");
}

void check_permutation(const Permutation& p, const char* what) {
  std::vector<bool> seen(p.size(), false);
  for (std::uint32_t v : p) {
    if (v >= p.size() || seen[v]) throw FormatError(std::string(what) + ": not a permutation");
    seen[v] = true;
  }
}

const ParameterSet& params_for(const FileHeader& h) {
  if (!is_preset(h.params_name))
    throw FormatError("unknown parameter set '" + h.params_name + "'");
  return preset(h.params_name);
}

}  // namespace

Bytes serialize_public_key(const PublicKey& pk) {
  FileHeader h;
  h.kind = 'P';
  h.params_name = pk.params.name;
  h.code_id = pk.code_id;
  Bytes out = h.serialize();
  append(out, pack_residues(pk.a.data(), residue_bits(pk.params.q)));
  return out;
}

PublicKey parse_public_key(std::span<const std::uint8_t> data) {
  const FileHeader h = FileHeader::parse(data, 'P');
  PublicKey pk;
  pk.params = params_for(h);
  pk.code_id = h.code_id;
  pk.code = RedundancyCode::derive(pk.params.n, pk.params.q, pk.code_id);
  const std::size_t want = FileHeader::kSize + public_key_packed_bytes(pk.params);
  if (data.size() != want) throw FormatError("public key: wrong file size");
  pk.a = ModMatrix(pk.params.kn(), pk.params.n);
  pk.a.data() = unpack_residues(data.subspan(FileHeader::kSize),
                                std::size_t(pk.params.kn()) * pk.params.n,
                                residue_bits(pk.params.q));
  check_residues(pk.a.data(), pk.params.q, "public key");
  return pk;
}

Bytes serialize_private_key(const PrivateKey& sk) {
  const ParameterSet& p = sk.params;
  FileHeader h;
  h.kind = 'S';
  h.params_name = p.name;
  h.code_id = sk.code_id;
  Bytes out = h.serialize();
  const std::uint32_t w = residue_bits(p.q);
  const std::uint32_t wi = index_bits(p.kn());
  append(out, pack_residues(sk.b.data(), w));
  append(out, pack_residues(sk.t.data(), w));
  append(out, pack_values(sk.c.p_star, wi));
  append(out, pack_values(sk.c.q_sel, wi));
  ResidueVec parity = sk.code.parity_row(0);
  const ResidueVec& h2 = sk.code.parity_row(1);
  parity.insert(parity.end(), h2.begin(), h2.end());
  append(out, pack_residues(parity, w));
  return out;
}

PrivateKey parse_private_key(std::span<const std::uint8_t> data) {
  const FileHeader h = FileHeader::parse(data, 'S');
  PrivateKey sk;
  sk.params = params_for(h);
  sk.code_id = h.code_id;
  const ParameterSet& p = sk.params;
  const std::uint32_t w = residue_bits(p.q);
  const std::uint32_t wi = index_bits(p.kn());

  const std::size_t want = FileHeader::kSize + private_key_packed_bytes(p);
  if (data.size() != want) throw FormatError("private key: wrong file size");

  std::size_t off = FileHeader::kSize;
  auto section = [&](std::size_t count, std::uint32_t width) {
    const std::size_t len = packed_bytes(count, width);
    auto part = data.subspan(off, len);
    off += len;
    return part;
  };

  sk.b = ModMatrix(p.n, p.n);
  sk.b.data() = unpack_residues(section(std::size_t(p.n) * p.n, w), std::size_t(p.n) * p.n, w);
  check_residues(sk.b.data(), p.q, "private key B");

  sk.t = ModMatrix(p.k, p.n);
  sk.t.data() = unpack_residues(section(std::size_t(p.k) * p.n, w), std::size_t(p.k) * p.n, w);
  check_residues(sk.t.data(), p.q, "private key T");
  for (Residue r : sk.t.data())
    if (r == 0) throw FormatError("private key T: zero entry");

  sk.c.q = p.q;
  sk.c.lambda_sq = p.lambda_sq;
  sk.c.p_star = unpack_values(section(p.kn(), wi), p.kn(), wi);
  sk.c.q_sel = unpack_values(section(p.kn(), wi), p.kn(), wi);
  check_permutation(sk.c.p_star, "private key P*");
  check_permutation(sk.c.q_sel, "private key Q");

  const auto parity = unpack_residues(section(2 * std::size_t(p.n - 2), w),
                                      2 * std::size_t(p.n - 2), w);
  check_residues(parity, p.q, "private key parity");
  ResidueVec h1(parity.begin(), parity.begin() + (p.n - 2));
  ResidueVec h2(parity.begin() + (p.n - 2), parity.end());
  sk.code = RedundancyCode::from_rows(p.n, p.q, std::move(h1), std::move(h2));

  auto inv = matrix_inverse(sk.b, p.q);
  if (!inv) throw FormatError("private key: B is singular");
  sk.b_inv = std::move(*inv);
  return sk;
}

void save_public_key(const std::string& path, const PublicKey& pk) {
  write_file(path, serialize_public_key(pk));
}

void save_private_key(const std::string& path, const PrivateKey& sk) {
  write_file(path, serialize_private_key(sk));
}

PublicKey load_public_key(const std::string& path) {
  return parse_public_key(read_file(path));
}

PrivateKey load_private_key(const std::string& path) {
  return parse_private_key(read_file(path));
}

}  // namespace eht
