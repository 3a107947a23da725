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

#include "eht/params.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "eht/modmath.hpp"

namespace eht {

ParameterSet make_parameter_set(std::string name, std::uint32_t n, std::uint32_t k,
                                std::uint32_t q, std::uint32_t lambda_sq, double sigma) {
  auto fail = [&](const char* why) {
    throw std::invalid_argument("parameter set '" + name + "': " + why);
  };
  if (n == 0 || k == 0 || q == 0 || lambda_sq == 0) fail("zero parameter");
  if (q >= (1u << 16)) fail("q must be < 2^16");
  if (!is_prime(q)) fail("q must be prime");
  if (k < 2) fail("k must be >= 2 (a single row per coordinate cannot reject wrong shifts)");
  if (!std::has_single_bit(lambda_sq)) fail("lambda^2 must be a power of two");
  if (lambda_sq < 2) fail("lambda^2 must be >= 2");
  if (n % lambda_sq != 0) fail("lambda^2 must divide n");
  if (sigma <= 0.0) fail("sigma must be positive");

  ParameterSet p;
  p.name = std::move(name);
  p.n = n;
  p.k = k;
  p.q = q;
  p.lambda_sq = lambda_sq;
  p.sigma = sigma;
  p.s = static_cast<std::uint32_t>(std::bit_width(lambda_sq) - 1);
  p.r = k * n / lambda_sq;
  p.sigma_lambda = sigma * std::sqrt(double(lambda_sq));

  const double two_pi_e = 2.0 * M_PI * M_E;
  if (double(q) <= p.sigma_lambda * std::sqrt(two_pi_e))
    throw std::invalid_argument("parameter set '" + p.name +
                                "': q must exceed sigma*lambda*sqrt(2*pi*e)");
  p.log_const = std::log(double(q) / (p.sigma_lambda * std::sqrt(2.0 * M_PI)));
  p.delta_sq = 2.0 * k * p.sigma_lambda * p.sigma_lambda * p.log_const;

  const std::uint32_t w = std::bit_width(q - 1);
  if ((std::uint64_t(n) * w) % 8 != 0)
    throw std::invalid_argument("parameter set '" + p.name +
                                "': n*ceil(log2 q) must be a multiple of 8");
  return p;
}

const std::vector<ParameterSet>& preset_registry() {
  static const std::vector<ParameterSet> kPresets = [] {
    std::vector<ParameterSet> v;
    v.push_back(make_parameter_set("EHT-light-A", 256, 16, 1021, 32, 8.8));
    v.push_back(make_parameter_set("EHT-light-B", 256, 25, 2039, 32, 14.5));
    v.push_back(make_parameter_set("EHT-medium-A", 384, 14, 2039, 32, 13.5));
    v.push_back(make_parameter_set("EHT-medium-B", 384, 24, 2039, 32, 13.5));
    v.push_back(make_parameter_set("EHT-high-A", 448, 17, 2039, 32, 17.5));
    v.push_back(make_parameter_set("EHT-high-B", 448, 24, 4091, 32, 27.0));
    // Desk-scale set for tests only; offers no security whatsoever.
    v.push_back(make_parameter_set("toy", 8, 2, 97, 4, 1.2));
    return v;
  }();
  return kPresets;
}

const ParameterSet& preset(const std::string& name) {
  for (const auto& p : preset_registry())
    if (p.name == name) return p;
  throw std::invalid_argument("unknown parameter set '" + name + "'");
}

bool is_preset(const std::string& name) {
  for (const auto& p : preset_registry())
    if (p.name == name) return true;
  return false;
}

}  // namespace eht
