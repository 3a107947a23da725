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

#include "eht/keygen.hpp"

#include <bit>
#include <stdexcept>
#include <thread>

namespace eht {

void fwht_mod(std::span<Residue> v, std::uint32_t block, std::uint32_t q) {
  if (!std::has_single_bit(block)) throw std::invalid_argument("fwht: block not a power of two");
  if (v.size() % block != 0) throw std::invalid_argument("fwht: length not a multiple of block");
  for (std::size_t base = 0; base < v.size(); base += block) {
    for (std::uint32_t half = 1; half < block; half <<= 1) {
      for (std::uint32_t i = 0; i < block; i += 2 * half) {
        for (std::uint32_t j = 0; j < half; ++j) {
          Residue& x = v[base + i + j];
          Residue& y = v[base + i + j + half];
          const std::uint32_t sum = std::uint32_t(x) + y;
          const std::uint32_t diff = std::uint32_t(x) + q - y;
          x = static_cast<Residue>(sum >= q ? sum - q : sum);
          y = static_cast<Residue>(diff >= q ? diff - q : diff);
        }
      }
    }
  }
}

ResidueVec apply_c(const CRep& c, std::span<const Residue> v) {
  const std::size_t kn = c.p_star.size();
  if (v.size() != kn) throw std::invalid_argument("apply_c: dimension mismatch");
  ResidueVec w(kn);
  for (std::size_t i = 0; i < kn; ++i) w[i] = v[c.q_sel[i]];
  fwht_mod(w, c.lambda_sq, c.q);
  ResidueVec out(kn);
  for (std::size_t x = 0; x < kn; ++x) out[c.p_star[x]] = w[x];
  return out;
}

ResidueVec apply_c_inverse(const CRep& c, std::span<const Residue> v) {
  const std::size_t kn = c.p_star.size();
  if (v.size() != kn) throw std::invalid_argument("apply_c_inverse: dimension mismatch");
  ResidueVec w(kn);
  for (std::size_t x = 0; x < kn; ++x) w[x] = v[c.p_star[x]];
  fwht_mod(w, c.lambda_sq, c.q);
  const std::uint32_t inv2s = mod_inverse(c.lambda_sq % c.q, c.q);
  ResidueVec out(kn);
  for (std::size_t i = 0; i < kn; ++i)
    out[c.q_sel[i]] = static_cast<Residue>(std::uint64_t(w[i]) * inv2s % c.q);
  return out;
}

ModMatrix materialize_c(const CRep& c) {
  const std::uint32_t kn = static_cast<std::uint32_t>(c.p_star.size());
  const std::uint32_t l2 = c.lambda_sq;
  ModMatrix m(kn, kn);
  for (std::uint32_t x = 0; x < kn; ++x) {
    const std::uint32_t block = x / l2;
    const std::uint32_t a = x % l2;
    for (std::uint32_t cc = block * l2; cc < (block + 1) * l2; ++cc) {
      const std::uint32_t b = cc % l2;
      const bool neg = std::popcount(a & b) & 1;
      m.at(c.p_star[x], c.q_sel[cc]) = static_cast<Residue>(neg ? c.q - 1 : 1);
    }
  }
  return m;
}

Permutation build_p_star_from_mapping(std::span<const std::uint32_t> mapping,
                                      std::uint32_t n, std::uint32_t k,
                                      std::uint32_t lambda_sq) {
  const std::uint32_t kn = k * n;
  if (mapping.size() != kn) throw std::invalid_argument("p_star: mapping size");
  Permutation p(kn);
  std::vector<std::uint32_t> used(n, 0);
  std::vector<bool> seen(n);
  for (std::uint32_t block = 0; block * lambda_sq < kn; ++block) {
    std::fill(seen.begin(), seen.end(), false);
    for (std::uint32_t l = 0; l < lambda_sq; ++l) {
      const std::uint32_t x = block * lambda_sq + l;
      const std::uint32_t chunk = mapping[x];
      if (chunk >= n || seen[chunk])
        throw std::invalid_argument("p_star: block maps twice into one chunk");
      seen[chunk] = true;
      if (used[chunk] >= k) throw std::invalid_argument("p_star: chunk over-subscribed");
      p[x] = chunk * k + used[chunk]++;
    }
  }
  return p;
}

Permutation build_p_star(std::uint32_t n, std::uint32_t k, std::uint32_t lambda_sq,
                         Rng& rng) {
  if (lambda_sq == 0 || n % lambda_sq != 0)
    throw std::invalid_argument("p_star: lambda^2 must divide n");
  const std::uint32_t blocks_per_round = n / lambda_sq;
  std::vector<std::uint32_t> mapping(k * n);
  for (std::uint32_t round = 0; round < k; ++round) {
    const Permutation chunk_order = sample_permutation(n, rng);
    for (std::uint32_t p = 0; p < blocks_per_round; ++p) {
      const std::uint32_t block = round * blocks_per_round + p;
      for (std::uint32_t l = 0; l < lambda_sq; ++l)
        mapping[block * lambda_sq + l] = chunk_order[p * lambda_sq + l];
    }
  }
  return build_p_star_from_mapping(mapping, n, k, lambda_sq);
}

bool t_column_robust(std::span<const Residue> col, const ParameterSet& p) {
  const std::uint32_t q = p.q;
  const std::uint64_t thr = p.accept_threshold();
  for (std::size_t j = 0; j < col.size(); ++j) {
    if (col[j] == 0) return false;
    for (std::size_t j2 = j + 1; j2 < col.size(); ++j2)
      if (col[j] == col[j2]) return false;
  }
  // The ball test must fail for every nonzero shift a.
  for (std::uint32_t a = 1; a < q; ++a) {
    std::uint64_t sum = 0;
    for (std::size_t j = 0; j < col.size(); ++j) {
      const std::uint32_t v = std::uint32_t(col[j]) * a % q;
      const std::int64_t cent = centered(v, q);
      sum += static_cast<std::uint64_t>(cent * cent);
      if (sum > thr) break;
    }
    if (sum <= thr) return false;
  }
  return true;
}

ModMatrix generate_t_table(const ParameterSet& p, Rng& rng) {
  constexpr int kColumnRetryBudget = 1000;
  ModMatrix t(p.k, p.n);
  ResidueVec col(p.k);
  for (std::uint32_t i = 0; i < p.n; ++i) {
    int attempt = 0;
    for (;; ++attempt) {
      if (attempt >= kColumnRetryBudget)
        throw ResamplingExhausted("T column " + std::to_string(i) + " kept failing; parameters look pathological");
      for (std::uint32_t j = 0; j < p.k; ++j)
        col[j] = static_cast<Residue>(1 + rng.uniform_below(p.q - 1));
      if (t_column_robust(col, p)) break;
    }
    for (std::uint32_t j = 0; j < p.k; ++j) t.at(j, i) = col[j];
  }
  return t;
}

std::pair<ModMatrix, ModMatrix> generate_b(std::uint32_t n, std::uint32_t q, Rng& rng) {
  for (;;) {
    ModMatrix b(n, n);
    for (auto& v : b.data()) v = sample_uniform_residue(q, rng);
    auto inv = matrix_inverse(b, q);
    if (inv) return {std::move(b), std::move(*inv)};
  }
}

PublicKey derive_public_key(const PrivateKey& sk, unsigned threads) {
  const ParameterSet& p = sk.params;
  PublicKey pk;
  pk.params = p;
  pk.code = sk.code;
  pk.code_id = sk.code_id;
  pk.a = ModMatrix(p.kn(), p.n);

  auto columns = [&](std::uint32_t c0, std::uint32_t c1) {
    ResidueVec w(p.kn());
    for (std::uint32_t c = c0; c < c1; ++c) {
      for (std::uint32_t i = 0; i < p.n; ++i) {
        const std::uint64_t bic = sk.b.at(i, c);
        for (std::uint32_t j = 0; j < p.k; ++j)
          w[std::size_t(i) * p.k + j] =
              static_cast<Residue>(std::uint64_t(sk.t.at(j, i)) * bic % p.q);
      }
      const ResidueVec col = apply_c_inverse(sk.c, w);
      for (std::uint32_t rrow = 0; rrow < p.kn(); ++rrow) pk.a.at(rrow, c) = col[rrow];
    }
  };

  if (threads <= 1) {
    columns(0, p.n);
  } else {
    std::vector<std::thread> pool;
    const std::uint32_t per = (p.n + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::uint32_t c0 = std::min(p.n, t * per);
      const std::uint32_t c1 = std::min(p.n, (t + 1) * per);
      if (c0 < c1) pool.emplace_back(columns, c0, c1);
    }
    for (auto& th : pool) th.join();
  }
  return pk;
}

KeyPair keygen(const ParameterSet& params, const Seed& seed, unsigned threads) {
  KeyPair kp;
  kp.prv.params = params;

  Rng rng_b(seed, "B");
  Rng rng_t(seed, "T");
  Rng rng_q(seed, "Q");
  Rng rng_p(seed, "P*");
  Rng rng_id(seed, "id");

  auto [b, b_inv] = generate_b(params.n, params.q, rng_b);
  kp.prv.b = std::move(b);
  kp.prv.b_inv = std::move(b_inv);
  kp.prv.t = generate_t_table(params, rng_t);
  kp.prv.c.q = params.q;
  kp.prv.c.lambda_sq = params.lambda_sq;
  kp.prv.c.q_sel = sample_permutation(params.kn(), rng_q);
  kp.prv.c.p_star = build_p_star(params.n, params.k, params.lambda_sq, rng_p);
  rng_id.fill_bytes(kp.prv.code_id.data(), kp.prv.code_id.size());
  kp.prv.code = RedundancyCode::derive(params.n, params.q, kp.prv.code_id);

  kp.pub = derive_public_key(kp.prv, threads);
  return kp;
}

}  // namespace eht
