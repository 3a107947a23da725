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

#ifndef EHT_PARAMS_HPP_
#define EHT_PARAMS_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace eht {

// System parameters plus the derived quantities used by the decryption
// statistic:
//   s          = log2(lambda^2)
//   r          = k*n / lambda^2         (Hadamard blocks in C)
//   sigma_lambda = sigma * lambda       (std dev of the rows of C applied
//                                        to the error vector)
//   log_const  = ln(q / (sigma_lambda * sqrt(2*pi)))
//   delta_sq   = 2*k*sigma_lambda^2*log_const  (acceptance ball radius^2)
struct ParameterSet {
  std::string name;
  std::uint32_t n = 0;
  std::uint32_t k = 0;
  std::uint32_t q = 0;
  std::uint32_t lambda_sq = 0;
  double sigma = 0.0;

  std::uint32_t s = 0;
  std::uint32_t r = 0;
  double sigma_lambda = 0.0;
  double log_const = 0.0;
  double delta_sq = 0.0;

  std::uint32_t kn() const { return k * n; }
  // Largest integer sum of squares still accepted by the ball test.
  std::uint64_t accept_threshold() const {
    return static_cast<std::uint64_t>(delta_sq);
  }
};

// Validates and fills in the derived fields. Requirements:
//   q prime, q < 2^16, k >= 2, lambda^2 a power of two dividing n,
//   sigma > 0 and q > sigma*lambda*sqrt(2*pi*e) so that log_const stays
//   clear of zero, and n*ceil(log2 q) divisible by 8 so the wire formats
//   are exact. Throws std::invalid_argument with a reason otherwise.
ParameterSet make_parameter_set(std::string name, std::uint32_t n, std::uint32_t k,
                                std::uint32_t q, std::uint32_t lambda_sq, double sigma);

// The six production parameter sets plus the insecure "toy" set used by
// tests and dense-matrix oracles.
const std::vector<ParameterSet>& preset_registry();

// Lookup by name; throws std::invalid_argument for unknown names.
const ParameterSet& preset(const std::string& name);

bool is_preset(const std::string& name);

}  // namespace eht

#endif  // EHT_PARAMS_HPP_
