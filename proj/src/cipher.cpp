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

#include "eht/cipher.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace eht {
namespace {

constexpr std::uint32_t kMaxK = 64;

// sq[r] = centered(r)^2 for r in [0, q); rebuilt only when q changes.
std::span<const std::uint32_t> square_table(std::uint32_t q) {
  thread_local std::vector<std::uint32_t> table;
  thread_local std::uint32_t table_q = 0;
  if (table_q != q) {
    table.resize(q);
    for (std::uint32_t r = 0; r < q; ++r) {
      const std::int64_t c = centered(r, q);
      table[r] = static_cast<std::uint32_t>(c * c);
    }
    table_q = q;
  }
  return table;
}

}  // namespace

namespace detail {

CoordinateScan scan_coordinate(std::span<const Residue> t_col,
                               std::span<const Residue> z_chunk, std::uint32_t q,
                               std::uint64_t threshold, bool need_argmin) {
  const std::uint32_t k = static_cast<std::uint32_t>(t_col.size());
  if (k == 0 || k > kMaxK || z_chunk.size() != k)
    throw std::invalid_argument("scan_coordinate: bad chunk");
  const auto sq = square_table(q);

  // d[j] tracks (t[j]*a - z[j]) mod q across the scan; one addition with a
  // conditional correction per step, never a division.
  std::array<std::uint32_t, kMaxK> d, step;
  for (std::uint32_t j = 0; j < k; ++j) {
    d[j] = (q - z_chunk[j]) % q;
    step[j] = t_col[j] % q;
  }

  CoordinateScan out;
  for (std::uint32_t a = 0; a < q; ++a) {
    std::uint64_t sum = 0;
    std::uint32_t j = 0;
    if (need_argmin) {
      for (; j < k; ++j) {
        sum += sq[d[j]];
        d[j] += step[j];
        if (d[j] >= q) d[j] -= q;
      }
      if (sum < out.min_sum) {
        out.min_sum = sum;
        out.argmin = a;
      }
    } else {
      for (; j < k; ++j) {
        sum += sq[d[j]];
        d[j] += step[j];
        if (d[j] >= q) d[j] -= q;
        if (sum > threshold) {
          ++j;
          break;
        }
      }
      for (; j < k; ++j) {  // keep the counters in lockstep after an early exit
        d[j] += step[j];
        if (d[j] >= q) d[j] -= q;
      }
    }
    if (sum <= threshold) {
      if (out.accepted < kMaxCandidates)
        out.values[out.accepted] = static_cast<Residue>(a);
      if (out.accepted <= kMaxCandidates) ++out.accepted;
    }
  }
  return out;
}

DecryptionOutcome resolve_candidates(const PrivateKey& sk,
                                     std::span<const CoordinateScan> scans) {
  const ParameterSet& p = sk.params;
  DecryptionOutcome out;

  std::uint64_t combos = 1;
  std::vector<std::uint32_t> multi;  // coordinates with several candidates
  for (std::uint32_t i = 0; i < p.n; ++i) {
    const std::uint32_t c = scans[i].accepted;
    if (c == 0) {
      out.status = DecryptionOutcome::Status::kRejectNoCandidate;
      out.coordinate = i;
      return out;
    }
    if (c > kMaxCandidates || (combos *= c) > kMaxCombinations) {
      out.status = DecryptionOutcome::Status::kRejectAmbiguous;
      out.coordinate = i;
      return out;
    }
    if (c > 1) multi.push_back(i);
  }

  // Base block from the first candidates; other combinations differ from it
  // by a few columns of B^-1.
  ResidueVec b(p.n);
  for (std::uint32_t i = 0; i < p.n; ++i) b[i] = scans[i].values[0];
  const ResidueVec x_base = solve_linear(sk.b_inv, b, p.q);

  ResidueVec x = x_base;
  std::vector<std::uint32_t> pick(multi.size(), 0);
  int passers = 0;
  ResidueVec x_good;
  for (;;) {
    if (sk.code.is_codeword(x)) {
      if (++passers >= 2) {
        out.status = DecryptionOutcome::Status::kRejectAmbiguous;
        out.coordinate = multi.empty() ? 0 : multi.front();
        return out;
      }
      x_good = x;
    }
    // next combination
    std::size_t pos = 0;
    while (pos < multi.size() && pick[pos] + 1 == scans[multi[pos]].accepted) ++pos;
    if (pos == multi.size()) break;
    ++pick[pos];
    for (std::size_t rst = 0; rst < pos; ++rst) pick[rst] = 0;
    // rebuild x for the new combination
    x = x_base;
    for (std::size_t mi = 0; mi < multi.size(); ++mi) {
      if (pick[mi] == 0) continue;
      const std::uint32_t i = multi[mi];
      const std::uint32_t delta =
          (scans[i].values[pick[mi]] + p.q - scans[i].values[0]) % p.q;
      for (std::uint32_t rrow = 0; rrow < p.n; ++rrow)
        x[rrow] = static_cast<Residue>(
            (x[rrow] + std::uint64_t(delta) * sk.b_inv.at(rrow, i)) % p.q);
    }
  }

  if (passers == 0) {
    out.status = DecryptionOutcome::Status::kCodeReject;
    return out;
  }
  auto decoded = sk.code.check_and_decode(x_good);
  if (!decoded) {  // candidate block uses out-of-range information residues
    out.status = DecryptionOutcome::Status::kCodeReject;
    return out;
  }
  out.status = DecryptionOutcome::Status::kSuccess;
  out.plaintext = std::move(*decoded);
  return out;
}

}  // namespace detail

double coordinate_statistic(const StatisticProfile& prof, std::span<const Residue> t_col,
                            std::span<const Residue> z_chunk, std::uint32_t a,
                            std::uint32_t q) {
  if (t_col.size() != z_chunk.size())
    throw std::invalid_argument("coordinate_statistic: chunk size mismatch");
  double s = 0.0;
  const double denom = 2.0 * prof.sigma_lambda * prof.sigma_lambda;
  for (std::size_t j = 0; j < t_col.size(); ++j) {
    const std::uint64_t v = (std::uint64_t(t_col[j]) * a + q - z_chunk[j]) % q;
    const double x = static_cast<double>(centered(static_cast<std::uint32_t>(v), q));
    s += prof.log_const - x * x / denom;
  }
  return s;
}

Ciphertext encrypt_with_error(const PublicKey& pk, std::span<const std::uint8_t> msg,
                              std::span<const Residue> e) {
  const ParameterSet& p = pk.params;
  if (e.size() != p.kn()) throw std::invalid_argument("encrypt: error vector length");
  const ResidueVec x = pk.code.encode(msg);
  Ciphertext ct;
  ct.y.resize(p.kn());
  for (std::uint32_t row = 0; row < p.kn(); ++row) {
    const std::uint32_t ax = row_dot(pk.a.row(row), x, p.q);
    ct.y[row] = static_cast<Residue>((ax + p.q - e[row]) % p.q);
  }
  return ct;
}

Ciphertext encrypt(const PublicKey& pk, std::span<const std::uint8_t> msg, Rng& rng) {
  const ParameterSet& p = pk.params;
  const GaussianParams gp{p.sigma, p.q};
  ResidueVec e(p.kn());
  for (auto& v : e) v = sample_gaussian_residue(gp, rng);
  return encrypt_with_error(pk, msg, e);
}

namespace {

DecryptionOutcome decrypt_impl(const PrivateKey& sk, const Ciphertext& ct, bool argmax) {
  const ParameterSet& p = sk.params;
  if (ct.y.size() != p.kn()) throw std::invalid_argument("decrypt: ciphertext length");

  const ResidueVec z = apply_c(sk.c, ct.y);
  const std::uint64_t thr = p.accept_threshold();

  std::array<Residue, kMaxK> t_col;
  std::vector<detail::CoordinateScan> scans(argmax ? 0 : p.n);
  ResidueVec b(argmax ? p.n : 0);
  for (std::uint32_t i = 0; i < p.n; ++i) {
    for (std::uint32_t j = 0; j < p.k; ++j) t_col[j] = sk.t.at(j, i);
    const auto scan = detail::scan_coordinate(
        std::span<const Residue>(t_col.data(), p.k),
        std::span<const Residue>(z.data() + std::size_t(i) * p.k, p.k), p.q, thr, argmax);
    if (argmax)
      b[i] = static_cast<Residue>(scan.argmin);
    else
      scans[i] = scan;
  }

  if (!argmax) return detail::resolve_candidates(sk, scans);

  DecryptionOutcome out;
  const ResidueVec x = solve_linear(sk.b_inv, b, p.q);
  auto decoded = sk.code.check_and_decode(x);
  if (!decoded) {
    out.status = DecryptionOutcome::Status::kCodeReject;
    return out;
  }
  out.status = DecryptionOutcome::Status::kSuccess;
  out.plaintext = std::move(*decoded);
  return out;
}

}  // namespace

DecryptionOutcome decrypt(const PrivateKey& sk, const Ciphertext& ct) {
  return decrypt_impl(sk, ct, false);
}

DecryptionOutcome decrypt_argmax(const PrivateKey& sk, const Ciphertext& ct) {
  return decrypt_impl(sk, ct, true);
}

const char* to_string(DecryptionOutcome::Status s) {
  switch (s) {
    case DecryptionOutcome::Status::kSuccess: return "success";
    case DecryptionOutcome::Status::kRejectNoCandidate: return "reject-no-candidate";
    case DecryptionOutcome::Status::kRejectAmbiguous: return "reject-ambiguous";
    case DecryptionOutcome::Status::kCodeReject: return "code-reject";
  }
  return "unknown";
}

Bytes serialize_ciphertext(const ParameterSet& p, const Ciphertext& ct) {
  if (ct.y.size() != p.kn()) throw std::invalid_argument("ciphertext length");
  FileHeader h;
  h.kind = 'C';
  h.params_name = p.name;
  Bytes out = h.serialize();
  const Bytes packed = pack_residues(ct.y, residue_bits(p.q));
  out.insert(out.end(), packed.begin(), packed.end());
  return out;
}

Ciphertext parse_ciphertext(const ParameterSet& p, std::span<const std::uint8_t> data) {
  FileHeader::parse(data, 'C');
  if (data.size() != FileHeader::kSize + ciphertext_packed_bytes(p))
    throw FormatError("ciphertext: wrong file size");
  Ciphertext ct;
  ct.y = unpack_residues(data.subspan(FileHeader::kSize), p.kn(), residue_bits(p.q));
  for (Residue r : ct.y)
    if (r >= p.q) throw FormatError("ciphertext: residue out of range");
  return ct;
}

void save_ciphertext(const std::string& path, const ParameterSet& p, const Ciphertext& ct) {
  write_file(path, serialize_ciphertext(p, ct));
}

std::pair<ParameterSet, Ciphertext> load_ciphertext(const std::string& path) {
  const Bytes data = read_file(path);
  const FileHeader h = FileHeader::parse(data, 'C');
  if (!is_preset(h.params_name))
    throw FormatError("unknown parameter set '" + h.params_name + "'");
  const ParameterSet p = preset(h.params_name);
  return {p, parse_ciphertext(p, data)};
}

}  // namespace eht
