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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eht/modmath.hpp"
#include "support.hpp"

using namespace eht;

TEST_CASE("centered representative") {
  CHECK(centered(0, 1021) == 0);
  CHECK(centered(1020, 1021) == -1);
  CHECK(centered(511, 1021) == -510);
  CHECK(centered(510, 1021) == 510);
  for (std::uint32_t a = 0; a < 97; ++a) {
    const std::int32_t c = centered(a, 97);
    CHECK(std::abs(c) <= 48);
    CHECK((c % 97 + 97) % 97 == static_cast<std::int32_t>(a));
  }
}

TEST_CASE("mod_inverse") {
  CHECK(mod_inverse(1, 1021) == 1);
  CHECK(mod_inverse(2, 1021) == 511);
  CHECK(mod_inverse(3, 2039) == 680);
  CHECK_THROWS_AS(mod_inverse(0, 97), std::domain_error);
  for (std::uint32_t a = 1; a < 97; ++a)
    CHECK(std::uint32_t(mod_inverse(a, 97)) * a % 97 == 1);
}

TEST_CASE("matrix_inverse on fixed cases") {
  CHECK(*matrix_inverse(ModMatrix::identity(5), 1021) == ModMatrix::identity(5));

  ModMatrix d(2, 2);
  d.at(0, 0) = 2;
  d.at(1, 1) = 3;
  const auto inv = matrix_inverse(d, 1021);
  REQUIRE(inv.has_value());
  CHECK(inv->at(0, 0) == 511);
  CHECK(inv->at(1, 1) == 681);
  CHECK(inv->at(0, 1) == 0);

  ModMatrix sing(2, 2);
  sing.at(0, 0) = 1;
  sing.at(0, 1) = 2;
  sing.at(1, 0) = 2;
  sing.at(1, 1) = 4;
  CHECK(!matrix_inverse(sing, 97).has_value());
}

TEST_CASE("matrix_inverse against the adjugate oracle") {
  Seed seed = test::seed_of(3);
  for (std::uint32_t q : {7u, 97u}) {
    Rng rng(seed, "minv", q);
    int invertible = 0;
    for (int trial = 0; trial < 64; ++trial) {
      const ModMatrix m = test::random_matrix(5, 5, q, rng);
      const auto ours = matrix_inverse(m, q);
      const auto oracle = test::adjugate_inverse(m, q);
      REQUIRE(ours.has_value() == oracle.has_value());
      if (!ours) continue;
      ++invertible;
      CHECK(*ours == *oracle);
      CHECK(mat_mul(m, *ours, q) == ModMatrix::identity(5));
      CHECK(mat_mul(*ours, m, q) == ModMatrix::identity(5));
    }
    CHECK(invertible > 32);  // singular draws are rare
  }
}

TEST_CASE("matrix_inverse random 4x4 over 97 with product check") {
  Rng rng(test::seed_of(4), "m4");
  for (int trial = 0; trial < 32; ++trial) {
    const ModMatrix m = test::random_matrix(4, 4, 97, rng);
    const auto inv = matrix_inverse(m, 97);
    if (!inv) continue;
    CHECK(mat_mul(m, *inv, 97) == ModMatrix::identity(4));
  }
}

TEST_CASE("mat_vec_mul") {
  const ResidueVec v{5, 6};
  CHECK(mat_vec_mul(ModMatrix::identity(2), v, 7) == ResidueVec{5, 6});

  ModMatrix z(3, 2);
  CHECK(mat_vec_mul(z, v, 7) == ResidueVec{0, 0, 0});

  ModMatrix m(2, 2);
  m.at(0, 0) = 1;
  m.at(0, 1) = 2;
  m.at(1, 0) = 3;
  m.at(1, 1) = 4;
  CHECK(mat_vec_mul(m, v, 7) == ResidueVec{3, 4});

  CHECK_THROWS_AS(mat_vec_mul(m, ResidueVec{1, 2, 3}, 7), std::invalid_argument);
}

TEST_CASE("row_dot handles large accumulations near the modulus") {
  // 448 maximal products under the largest modulus: worst case for the
  // chunked 32-bit accumulation.
  const std::uint32_t q = 4091;
  ResidueVec a(448, 4090), b(448, 4090);
  std::uint64_t want = 0;
  for (int i = 0; i < 448; ++i) want += 4090ull * 4090ull;
  CHECK(row_dot(a, b, q) == want % q);
}

TEST_CASE("solve_linear round trip") {
  Rng rng(test::seed_of(5), "slv");
  for (int trial = 0; trial < 16; ++trial) {
    const ModMatrix b = test::random_matrix(6, 6, 97, rng);
    const auto inv = matrix_inverse(b, 97);
    if (!inv) continue;
    ResidueVec x(6);
    for (auto& v : x) v = sample_uniform_residue(97, rng);
    const ResidueVec rhs = mat_vec_mul(b, x, 97);
    CHECK(solve_linear(*inv, rhs, 97) == x);
    CHECK(solve_linear(*inv, ResidueVec(6, 0), 97) == ResidueVec(6, 0));
  }
  // B = I: solution is the right-hand side itself.
  const ResidueVec rhs{10, 20, 30};
  CHECK(solve_linear(ModMatrix::identity(3), rhs, 97) == rhs);
}

TEST_CASE("is_prime") {
  CHECK(is_prime(2));
  CHECK(is_prime(97));
  CHECK(is_prime(1021));
  CHECK(is_prime(2039));
  CHECK(is_prime(4091));
  CHECK(!is_prime(1));
  CHECK(!is_prime(1024));
  CHECK(!is_prime(2047));
}
