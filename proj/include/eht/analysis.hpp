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

#ifndef EHT_ANALYSIS_HPP_
#define EHT_ANALYSIS_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "eht/cipher.hpp"
#include "eht/keygen.hpp"
#include "eht/params.hpp"

namespace eht {

// ---- special functions -------------------------------------------------------

// Regularized lower/upper incomplete gamma. Series for x < a+1, Lentz
// continued fraction otherwise; relative accuracy around 1e-12 even deep in
// the upper tail, which the 1e-11-scale failure probabilities need.
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// P(chi^2_k < t)
double chi_square_cdf(double t, double k);

double log2_binomial(double n, double k);

// ---- failure probability ------------------------------------------------------

struct FailureEstimate {
  double beta = 0.0;              // per-coordinate accept-correct probability
  double beta1 = 0.0;             // beta^n
  double one_minus_beta1 = 0.0;   // computed directly for tiny values
  double alpha = 0.0;             // per-(coordinate, residue) false accept
  double alpha1 = 0.0;            // n*q*alpha
  double accept_incorrect = 0.0;  // alpha1 / q^2
  double failure = 0.0;           // (1 - beta1) + alpha1/q^2
};

FailureEstimate estimate_failure(const ParameterSet& p);

// ln q / ln(q/(sigma*lambda*sqrt(2*pi*e))): how the number of rows per
// coordinate has to scale. A guide, not a bound. Throws std::domain_error
// when the divergence is not positive.
double estimate_k_asymptotic(const ParameterSet& p);

// ---- lattice attack costs ------------------------------------------------------

inline constexpr double kClassicalSieveExp = 0.292;
inline constexpr double kQuantumSieveExp = 0.265;
inline constexpr double kPlausibleSieveExp = 0.2075;

struct CostReport {
  std::string attack;
  std::optional<std::uint32_t> m;  // samples (primal)
  std::optional<std::uint32_t> h;  // support guess size (lattice key recovery)
  std::optional<std::uint32_t> b;  // BKZ block size
  double log2_classical = 0.0;
  double log2_quantum = 0.0;
  double log2_plausible = 0.0;
};

// Root-Hermite factor of BKZ with block size b.
double bkz_root_hermite(double b);

// Primal attack on the underlying LWE instance: embed the error into a
// uniquely-short-vector lattice of dimension m+n+1 and volume q^m built
// from m rows, and find the smallest feasible block size, minimised over
// m in [n, kn]. Costs are b times the sieve exponents. Throws
// std::runtime_error when no block size is feasible for any m.
CostReport primal_attack_cost(const ParameterSet& p);

struct KeyRecoveryCosts {
  CostReport brute_force;
  CostReport tmto;
  CostReport lattice;
};

// Brute force over row-support pairs, the sort-and-match time/memory
// trade-off, and the support-guessing lattice attack (minimised over the
// guess size h).
KeyRecoveryCosts key_recovery_costs(const ParameterSet& p);

// ---- multiple encryptions of one block -------------------------------------------

struct AttackRecovered {
  ResidueVec x;
  Bytes plaintext;
};
struct AttackInsufficient {};    // averaged estimate fails the parity check
struct AttackSingular {};        // no invertible row subset
using MultipleEncryptionResult =
    std::variant<AttackRecovered, AttackInsufficient, AttackSingular>;

// Averages the aligned centered ciphertexts row by row, keeps the rows
// whose mean sits closest to an integer, solves an invertible subsystem
// and verifies the parity check (a few row subsets are tried before
// giving up).
MultipleEncryptionResult multiple_encryption_attack(
    std::span<const Ciphertext> cts, const PublicKey& pk);

// ---- very-short-vector structure check ----------------------------------------

struct CollinearityVerdict {
  bool all_collinear = true;
  std::size_t vectors = 0;  // nonzero short vectors found
  std::vector<std::int32_t> witness_a, witness_b;  // a counterexample pair
};

// Enumerates all vectors (v1, t2*v1, ..., tk*v1 mod q) whose centered
// entries all stay below sqrt(q/2) in absolute value and verifies every
// pair is related by an integer scalar. Throws std::invalid_argument when
// q > 211 or k > 4 (enumeration guard).
CollinearityVerdict lemma1_collinearity_check(std::uint32_t q,
                                              std::span<const Residue> t_tail);

}  // namespace eht

#endif  // EHT_ANALYSIS_HPP_
