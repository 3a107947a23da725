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

#include "eht/experiments.hpp"

#include <array>

namespace eht {

namespace {

FailureExperimentResult run_failure_trials(const KeyPair& kp, std::uint64_t first_trial,
                                           std::uint64_t trials, const Seed& seed,
                                           const std::function<void(std::uint64_t)>& progress);

}  // namespace

FailureExperimentResult failure_experiment(const KeyPair& kp, std::uint64_t trials,
                                           const Seed& seed,
                                           const std::function<void(std::uint64_t)>& progress) {
  return run_failure_trials(kp, 0, trials, seed, progress);
}

FailureExperimentResult failure_experiment_fresh_keys(
    const ParameterSet& params, std::uint64_t trials, std::uint64_t trials_per_key,
    const Seed& keygen_seed, const Seed& seed,
    const std::function<void(std::uint64_t)>& progress) {
  FailureExperimentResult total;
  std::uint64_t done = 0;
  for (std::uint64_t batch = 0; done < trials; ++batch) {
    Seed ks{};
    Rng kg(keygen_seed, "kg", batch);
    kg.fill_bytes(ks.data(), ks.size());
    const KeyPair kp = keygen(params, ks);
    const std::uint64_t n = std::min<std::uint64_t>(trials_per_key, trials - done);
    const auto part = run_failure_trials(kp, done, n, seed, progress);
    total.trials += part.trials;
    total.reject_correct += part.reject_correct;
    total.false_accept += part.false_accept;
    total.ok += part.ok;
    total.reject_no_candidate += part.reject_no_candidate;
    total.reject_ambiguous += part.reject_ambiguous;
    total.code_reject += part.code_reject;
    total.wrong_plaintext += part.wrong_plaintext;
    done += n;
  }
  return total;
}

namespace {

FailureExperimentResult run_failure_trials(const KeyPair& kp, std::uint64_t first_trial,
                                           std::uint64_t trials, const Seed& seed,
                                           const std::function<void(std::uint64_t)>& progress) {
  const ParameterSet& p = kp.prv.params;
  const PrivateKey& sk = kp.prv;
  const std::uint64_t thr = p.accept_threshold();
  const GaussianParams gp{p.sigma, p.q};
  const std::size_t cap = kp.pub.code.capacity_bytes();

  FailureExperimentResult res;
  res.trials = trials;

  Bytes msg(cap);
  ResidueVec e(p.kn());
  std::vector<detail::CoordinateScan> scans(p.n);
  std::array<Residue, 64> t_col;

  for (std::uint64_t local = 0; local < trials; ++local) {
    const std::uint64_t trial = first_trial + local;
    Rng rng_msg(seed, "msg", trial);
    Rng rng_err(seed, "err", trial);
    rng_msg.fill_bytes(msg.data(), msg.size());
    for (auto& v : e) v = sample_gaussian_residue(gp, rng_err);

    const Ciphertext ct = encrypt_with_error(kp.pub, msg, e);
    const ResidueVec x = kp.pub.code.encode(msg);
    const ResidueVec b_true = mat_vec_mul(sk.b, x, p.q);
    const ResidueVec z = apply_c(sk.c, ct.y);

    bool rejected_correct = false;
    bool accepted_wrong = false;
    for (std::uint32_t i = 0; i < p.n; ++i) {
      for (std::uint32_t j = 0; j < p.k; ++j) t_col[j] = sk.t.at(j, i);
      const std::span<const Residue> tc(t_col.data(), p.k);
      const std::span<const Residue> zc(z.data() + std::size_t(i) * p.k, p.k);

      // Ball test at the true residue (exact even if the scan overflows).
      std::uint64_t sum = 0;
      for (std::uint32_t j = 0; j < p.k; ++j) {
        const std::uint32_t v =
            static_cast<std::uint32_t>((std::uint64_t(t_col[j]) * b_true[i] + p.q - zc[j]) % p.q);
        const std::int64_t c = centered(v, p.q);
        sum += std::uint64_t(c * c);
      }
      const bool correct_ok = sum <= thr;
      if (!correct_ok) rejected_correct = true;

      scans[i] = detail::scan_coordinate(tc, zc, p.q, thr, false);
      if (scans[i].accepted > (correct_ok ? 1u : 0u)) accepted_wrong = true;
    }

    if (rejected_correct) ++res.reject_correct;
    if (accepted_wrong) ++res.false_accept;

    const DecryptionOutcome outcome = detail::resolve_candidates(sk, scans);
    switch (outcome.status) {
      case DecryptionOutcome::Status::kRejectNoCandidate:
        ++res.reject_no_candidate;
        break;
      case DecryptionOutcome::Status::kRejectAmbiguous:
        ++res.reject_ambiguous;
        break;
      case DecryptionOutcome::Status::kCodeReject:
        ++res.code_reject;
        break;
      case DecryptionOutcome::Status::kSuccess:
        if (outcome.plaintext == msg)
          ++res.ok;
        else
          ++res.wrong_plaintext;
        break;
    }
    if (progress && (trial + 1) % 10000 == 0) progress(trial + 1);
  }
  return res;
}

}  // namespace

std::uint64_t multiple_encryption_experiment(const PublicKey& pk, std::uint64_t trials,
                                             std::uint32_t s, const Seed& seed) {
  const std::size_t cap = pk.code.capacity_bytes();
  std::uint64_t successes = 0;
  Bytes msg(cap);
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    Rng rng_msg(seed, "amsg", trial);
    rng_msg.fill_bytes(msg.data(), msg.size());
    std::vector<Ciphertext> cts;
    cts.reserve(s);
    for (std::uint32_t i = 0; i < s; ++i) {
      Rng rng_err(seed, "aerr", trial * s + i);
      cts.push_back(encrypt(pk, msg, rng_err));
    }
    const auto result = multiple_encryption_attack(cts, pk);
    if (const auto* rec = std::get_if<AttackRecovered>(&result))
      if (rec->plaintext == msg) ++successes;
  }
  return successes;
}

}  // namespace eht
