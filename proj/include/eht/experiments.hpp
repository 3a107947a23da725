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

#ifndef EHT_EXPERIMENTS_HPP_
#define EHT_EXPERIMENTS_HPP_

#include <cstdint>
#include <functional>

#include "eht/analysis.hpp"
#include "eht/cipher.hpp"

namespace eht {

// Seeded encrypt/decrypt cycles under one key, with per-trial derived
// randomness (stream ids "msg"/"err" with the trial index as instance), so
// the result is reproducible and independent of trial order.
struct FailureExperimentResult {
  std::uint64_t trials = 0;
  // A coordinate refused its true residue somewhere in the block.
  std::uint64_t reject_correct = 0;
  // Some wrong residue passed the ball test somewhere in the block.
  std::uint64_t false_accept = 0;
  // Full-decryption accounting.
  std::uint64_t ok = 0;
  std::uint64_t reject_no_candidate = 0;
  std::uint64_t reject_ambiguous = 0;
  std::uint64_t code_reject = 0;
  std::uint64_t wrong_plaintext = 0;  // accepted but not the encrypted bytes

  double reject_correct_rate() const { return double(reject_correct) / double(trials); }
  double false_accept_rate() const { return double(false_accept) / double(trials); }
  double failure_rate() const { return double(trials - ok) / double(trials); }
};

FailureExperimentResult failure_experiment(const KeyPair& kp, std::uint64_t trials,
                                           const Seed& seed,
                                           const std::function<void(std::uint64_t)>& progress = {});

// Same cycles, but with a fresh key every `trials_per_key` trials (key
// seeds derived from `keygen_seed`). The closed-form failure estimates
// average over the key distribution; the per-key false-accept rate in
// particular is heavy-tailed (one borderline t column dominates a key),
// so bounding the estimates needs key averaging.
FailureExperimentResult failure_experiment_fresh_keys(
    const ParameterSet& params, std::uint64_t trials, std::uint64_t trials_per_key,
    const Seed& keygen_seed, const Seed& seed,
    const std::function<void(std::uint64_t)>& progress = {});

// Re-encrypts one random block `s` times with fresh noise and runs the
// averaging attack; repeated `trials` times. Returns how often the exact
// plaintext was recovered.
std::uint64_t multiple_encryption_experiment(const PublicKey& pk, std::uint64_t trials,
                                             std::uint32_t s, const Seed& seed);

}  // namespace eht

#endif  // EHT_EXPERIMENTS_HPP_
