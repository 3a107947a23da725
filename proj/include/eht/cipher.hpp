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

#ifndef EHT_CIPHER_HPP_
#define EHT_CIPHER_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "eht/codec.hpp"
#include "eht/keygen.hpp"

namespace eht {

struct Ciphertext {
  ResidueVec y;  // length kn
};

// Per-coordinate decision profile. Writing x_j for the centered residue
// t[j][i]*a - z[j + k*i], the statistic is
//   S_i(a) = sum_j ( log_const - x_j^2 / (2*sigma_lambda^2) )
// and S_i(a) > 0 is the same test as sum_j x_j^2 < delta_sq.
struct StatisticProfile {
  double sigma_lambda = 0.0;
  double log_const = 0.0;
  double delta_sq = 0.0;
  std::uint64_t threshold = 0;  // floor(delta_sq): accept iff sum <= threshold

  static StatisticProfile from_params(const ParameterSet& p) {
    return {p.sigma_lambda, p.log_const, p.delta_sq, p.accept_threshold()};
  }
};

double coordinate_statistic(const StatisticProfile& prof, std::span<const Residue> t_col,
                            std::span<const Residue> z_chunk, std::uint32_t a,
                            std::uint32_t q);

struct DecryptionOutcome {
  enum class Status {
    kSuccess,
    kRejectNoCandidate,  // some coordinate accepted no residue
    kRejectAmbiguous,    // candidates could not be narrowed to one block
    kCodeReject,         // no candidate combination passed the parity check
  };
  Status status = Status::kCodeReject;
  Bytes plaintext;            // set on success
  std::uint32_t coordinate = 0;  // first offending coordinate for rejects

  bool ok() const { return status == Status::kSuccess; }
};

const char* to_string(DecryptionOutcome::Status s);

// y = A*x - e (mod q) with e sampled i.i.d. from the rounded Gaussian.
Ciphertext encrypt(const PublicKey& pk, std::span<const std::uint8_t> msg, Rng& rng);

// Deterministic variant with a caller-supplied error vector (testing and
// analysis; e = 0 gives the exact case).
Ciphertext encrypt_with_error(const PublicKey& pk, std::span<const std::uint8_t> msg,
                              std::span<const Residue> e);

// Threshold rule: per coordinate accept a iff S_i(a) > 0. A coordinate
// accepting nothing is a reject. When coordinates accept more than one
// residue (the threshold test passes a wrong shift roughly n*q*alpha of
// the time, which is far from negligible for the level-A parameter sets),
// the parity check arbitrates: every candidate combination is solved and
// exactly one surviving codeword is required. RejectAmbiguous is kept for
// the cases the code cannot settle: several combinations pass the parity
// check, a coordinate accepts more than 8 residues, or the combination
// count explodes. Failures are values, not exceptions.
DecryptionOutcome decrypt(const PrivateKey& sk, const Ciphertext& ct);

// Argmax rule: per coordinate pick the residue maximising S_i(a)
// (equivalently minimising the square sum; ties to the smaller residue).
// Never rejects at the coordinate level; the parity check still applies.
DecryptionOutcome decrypt_argmax(const PrivateKey& sk, const Ciphertext& ct);

// ---- ciphertext file -------------------------------------------------------

Bytes serialize_ciphertext(const ParameterSet& p, const Ciphertext& ct);
Ciphertext parse_ciphertext(const ParameterSet& p, std::span<const std::uint8_t> data);
void save_ciphertext(const std::string& path, const ParameterSet& p, const Ciphertext& ct);
// Reads the header, resolves the preset by name, validates the size.
std::pair<ParameterSet, Ciphertext> load_ciphertext(const std::string& path);

// ---- scan internals (shared with the Monte-Carlo experiments) --------------

namespace detail {

inline constexpr std::uint32_t kMaxCandidates = 8;      // per coordinate
inline constexpr std::uint32_t kMaxCombinations = 4096;  // per block

// Result of scanning all residues a at one coordinate.
struct CoordinateScan {
  std::uint32_t accepted = 0;  // accepted residues; kMaxCandidates+1 means overflow
  std::array<Residue, kMaxCandidates> values{};  // the first accepted residues
  std::uint32_t argmin = 0;       // residue minimising the square sum
  std::uint64_t min_sum = ~0ull;  // the minimal square sum

  std::uint32_t first() const { return values[0]; }
};

CoordinateScan scan_coordinate(std::span<const Residue> t_col,
                               std::span<const Residue> z_chunk, std::uint32_t q,
                               std::uint64_t threshold, bool need_argmin);

// Turns per-coordinate candidate sets into the final outcome: enumerates
// candidate combinations, solves each through the cached inverse of B and
// keeps the unique parity-passing block.
DecryptionOutcome resolve_candidates(const PrivateKey& sk,
                                     std::span<const CoordinateScan> scans);

}  // namespace detail

}  // namespace eht

#endif  // EHT_CIPHER_HPP_
