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

#ifndef EHT_KEYGEN_HPP_
#define EHT_KEYGEN_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "eht/codec.hpp"
#include "eht/modmath.hpp"
#include "eht/params.hpp"
#include "eht/sampling.hpp"

namespace eht {

using Permutation = std::vector<std::uint32_t>;  // perm[i] = image of i

// The kn x kn matrix C is never materialized. It factors as
//     C = P* . diag(H, ..., H) . Q
// with r diagonal Hadamard blocks H of size lambda^2 = 2^s
// (H[a][b] = (-1)^<a,b>), a column selection Q and the chunk-spreading row
// placement P*. Multiplication by C costs kn*s additions via the fast
// Walsh-Hadamard transform, and C^-1 = 2^-s Q^-1 diag(H,...,H) P*^-1.
struct CRep {
  std::uint32_t q = 0;
  std::uint32_t lambda_sq = 0;
  Permutation p_star;  // row x of the block matrix becomes row p_star[x] of C
  Permutation q_sel;   // (Qv)[i] = v[q_sel[i]]
};

struct PrivateKey {
  ParameterSet params;
  ModMatrix b;      // n x n, invertible mod q
  ModMatrix b_inv;  // cached inverse
  ModMatrix t;      // k x n table; t.at(j, i) scales row j of chunk i
  CRep c;
  RedundancyCode code;
  std::array<std::uint8_t, 8> code_id = {};
};

struct PublicKey {
  ParameterSet params;
  ModMatrix a;  // kn x n
  RedundancyCode code;
  std::array<std::uint8_t, 8> code_id = {};
};

struct KeyPair {
  PrivateKey prv;
  PublicKey pub;
};

// In-place Walsh-Hadamard transform mod q of each contiguous block of
// `block` entries (block a power of two). Applying it twice multiplies a
// vector by `block`.
void fwht_mod(std::span<Residue> v, std::uint32_t block, std::uint32_t q);

// C*v and C^-1*v without materializing C.
ResidueVec apply_c(const CRep& c, std::span<const Residue> v);
ResidueVec apply_c_inverse(const CRep& c, std::span<const Residue> v);

// Dense C for desk-scale oracles and tests.
ModMatrix materialize_c(const CRep& c);

// Chunk-spreading placement: rows of one Hadamard block (they share their
// support) are spread over lambda^2 distinct chunks of k consecutive rows,
// so no two same-support rows land in one chunk. `mapping[x]` is the chunk
// (0-based) receiving block row x; within a chunk, rows take slots in
// increasing x. Throws std::invalid_argument if the mapping is not
// admissible (some block repeats a chunk, or a chunk is over-subscribed).
Permutation build_p_star_from_mapping(std::span<const std::uint32_t> mapping,
                                      std::uint32_t n, std::uint32_t k,
                                      std::uint32_t lambda_sq);

// Draws an admissible mapping: blocks are grouped into k rounds of
// n/lambda^2 blocks; each round deals a fresh shuffle of the n chunks out in
// slices of lambda^2. Requires lambda^2 | n.
Permutation build_p_star(std::uint32_t n, std::uint32_t k, std::uint32_t lambda_sq,
                         Rng& rng);

// Signals that a T column kept failing the robustness test; practically
// impossible for sane parameters.
struct ResamplingExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// k x n table of nonzero residues; per column the k entries are pairwise
// distinct and every nonzero shift a satisfies
//     sum_j centered(a * t[j][i])^2 >= delta^2,
// so with zero noise no wrong shift can pass the ball test. Columns are
// resampled until they pass (budget 1000 per column).
ModMatrix generate_t_table(const ParameterSet& p, Rng& rng);

// True when the column passes both conditions above.
bool t_column_robust(std::span<const Residue> col, const ParameterSet& p);

// Uniform invertible matrix and its inverse.
std::pair<ModMatrix, ModMatrix> generate_b(std::uint32_t n, std::uint32_t q, Rng& rng);

// A = C^-1 T B, column by column through the closed-form inverse.
// `threads` > 1 splits the columns; the result does not depend on it.
PublicKey derive_public_key(const PrivateKey& sk, unsigned threads = 1);

KeyPair keygen(const ParameterSet& params, const Seed& seed, unsigned threads = 1);

// ---- key/ciphertext files ---------------------------------------------------

void save_public_key(const std::string& path, const PublicKey& pk);
void save_private_key(const std::string& path, const PrivateKey& sk);
PublicKey load_public_key(const std::string& path);
PrivateKey load_private_key(const std::string& path);

Bytes serialize_public_key(const PublicKey& pk);
Bytes serialize_private_key(const PrivateKey& sk);
PublicKey parse_public_key(std::span<const std::uint8_t> data);
PrivateKey parse_private_key(std::span<const std::uint8_t> data);

}  // namespace eht

#endif  // EHT_KEYGEN_HPP_
