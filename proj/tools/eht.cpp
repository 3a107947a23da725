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

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "eht/analysis.hpp"
#include "eht/cipher.hpp"
#include "eht/experiments.hpp"
#include "eht/keygen.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <x86intrin.h>
#define EHT_HAVE_RDTSC 1
#endif

namespace {

using nlohmann::json;

// sysexits-style codes, plus one distinct code per decryption reject kind.
constexpr int kExitUsage = 64;
constexpr int kExitFormat = 65;
constexpr int kExitNoInput = 66;
constexpr int kExitRejectNoCandidate = 70;
constexpr int kExitRejectAmbiguous = 71;
constexpr int kExitCodeReject = 72;

eht::Seed resolve_seed(const std::string& flag_value, bool* generated = nullptr) {
  std::string hex = flag_value;
  if (hex.empty()) {
    if (const char* env = std::getenv("EHT_SEED")) hex = env;
  }
  if (hex.empty()) {
    if (generated) *generated = true;
    return eht::random_seed();
  }
  auto seed = eht::parse_seed_hex(hex);
  if (!seed) throw eht::FormatError("seed must be 64 hex characters");
  return *seed;
}

void require_input(const std::string& path) {
  if (!std::filesystem::exists(path))
    throw std::system_error(ENOENT, std::generic_category(), path);
}

json failure_json(const eht::ParameterSet& p) {
  const auto f = eht::estimate_failure(p);
  return {
      {"name", p.name},         {"n", p.n},
      {"k", p.k},               {"q", p.q},
      {"lambda_sq", p.lambda_sq}, {"sigma", p.sigma},
      {"delta_sq", p.delta_sq}, {"beta", f.beta},
      {"one_minus_beta1", f.one_minus_beta1},
      {"alpha", f.alpha},       {"alpha1", f.alpha1},
      {"accept_incorrect", f.accept_incorrect},
      {"failure", f.failure},
      {"k_asymptotic", eht::estimate_k_asymptotic(p)},
  };
}

json primal_json(const eht::ParameterSet& p) {
  const auto r = eht::primal_attack_cost(p);
  return {
      {"name", p.name},
      {"m", *r.m},
      {"b", *r.b},
      {"classical", std::floor(r.log2_classical)},
      {"quantum", std::floor(r.log2_quantum)},
      {"plausible", std::floor(r.log2_plausible)},
  };
}

json key_recovery_json(const eht::ParameterSet& p) {
  const auto kr = eht::key_recovery_costs(p);
  return {
      {"name", p.name},
      {"lattice",
       {{"h", *kr.lattice.h},
        {"b", *kr.lattice.b},
        {"classical", std::floor(kr.lattice.log2_classical)},
        {"quantum", std::floor(kr.lattice.log2_quantum)},
        {"plausible", std::floor(kr.lattice.log2_plausible)}}},
      {"tmto", std::floor(kr.tmto.log2_classical)},
      {"brute_force", std::floor(kr.brute_force.log2_classical)},
  };
}

json sizes_json(const eht::ParameterSet& p) {
  return {
      {"name", p.name},
      {"public_key_bytes", eht::public_key_packed_bytes(p)},
      {"plaintext_bytes", eht::plaintext_packed_bytes(p)},
      {"ciphertext_bytes", eht::ciphertext_packed_bytes(p)},
      {"private_key_bytes", eht::private_key_packed_bytes(p)},
      {"message_capacity_bytes",
       std::size_t(p.n - 2) * eht::info_bits(p.q) / 8},
  };
}

void print_failure_text(const eht::ParameterSet& p) {
  const auto f = eht::estimate_failure(p);
  std::printf("%-13s n=%-4u k=%-3u q=%-5u l2=%-3u sigma=%-5.3g  1-beta1=%.3e  alpha1=%.3e\n",
              p.name.c_str(), p.n, p.k, p.q, p.lambda_sq, p.sigma, f.one_minus_beta1,
              f.alpha1);
}

void print_attacks_text(const eht::ParameterSet& p) {
  const auto pr = eht::primal_attack_cost(p);
  std::printf("%-13s primal: m=%u b=%u C=%d Q=%d P=%d\n", p.name.c_str(), *pr.m, *pr.b,
              int(std::floor(pr.log2_classical)), int(std::floor(pr.log2_quantum)),
              int(std::floor(pr.log2_plausible)));
  const auto kr = eht::key_recovery_costs(p);
  std::printf("%-13s key-recovery: lattice h=%u b=%u C=%d Q=%d P=%d  tmto=%d  brute=%d\n",
              p.name.c_str(), *kr.lattice.h, *kr.lattice.b,
              int(std::floor(kr.lattice.log2_classical)),
              int(std::floor(kr.lattice.log2_quantum)),
              int(std::floor(kr.lattice.log2_plausible)),
              int(std::floor(kr.tmto.log2_classical)),
              int(std::floor(kr.brute_force.log2_classical)));
}

int run(int argc, char** argv) {
  CLI::App app{"EHT trapdoor-LWE public-key cryptosystem"};
  app.require_subcommand(1);

  auto params_validator = CLI::Validator(
      [](std::string& v) -> std::string {
        return eht::is_preset(v) ? "" : "unknown parameter set '" + v + "'";
      },
      "PRESET");

  // keygen
  auto* cmd_keygen = app.add_subcommand("keygen", "Generate a key pair");
  std::string kg_params, kg_seed, kg_out = ".";
  unsigned kg_threads = 1;
  cmd_keygen->add_option("--params", kg_params, "Parameter set name ('toy' is insecure, tests only)")
      ->required()
      ->check(params_validator);
  cmd_keygen->add_option("--seed", kg_seed, "64 hex chars (default: $EHT_SEED or OS entropy)");
  cmd_keygen->add_option("--out", kg_out, "Output directory");
  cmd_keygen->add_option("--threads", kg_threads, "Worker threads for key derivation");

  // encrypt
  auto* cmd_encrypt = app.add_subcommand("encrypt", "Encrypt one message block");
  std::string en_pub, en_in, en_out, en_seed;
  cmd_encrypt->add_option("--pub", en_pub, "Public key file")->required();
  cmd_encrypt->add_option("--in", en_in, "Message file (exactly the block capacity)")->required();
  cmd_encrypt->add_option("--out", en_out, "Ciphertext file")->required();
  cmd_encrypt->add_option("--seed", en_seed, "64 hex chars (default: $EHT_SEED or OS entropy)");

  // decrypt
  auto* cmd_decrypt = app.add_subcommand("decrypt", "Decrypt one ciphertext");
  std::string de_prv, de_in, de_out, de_rule = "threshold";
  cmd_decrypt->add_option("--prv", de_prv, "Private key file")->required();
  cmd_decrypt->add_option("--in", de_in, "Ciphertext file")->required();
  cmd_decrypt->add_option("--out", de_out, "Recovered message file")->required();
  cmd_decrypt->add_option("--rule", de_rule, "Decision rule")
      ->check(CLI::IsMember({"threshold", "argmax"}));

  // estimate
  auto* cmd_estimate = app.add_subcommand("estimate", "Failure and attack-cost estimates");
  std::string es_params;
  bool es_failure = false, es_attacks = false, es_all = false, es_json = false;
  cmd_estimate->add_option("--params", es_params, "Parameter set (default: every preset)")
      ->check(params_validator);
  cmd_estimate->add_flag("--failure", es_failure, "Decryption failure estimates");
  cmd_estimate->add_flag("--attacks", es_attacks, "Attack cost estimates");
  cmd_estimate->add_flag("--all", es_all, "Everything");
  cmd_estimate->add_flag("--json", es_json, "JSON output");

  // bench
  auto* cmd_bench = app.add_subcommand("bench", "Time keygen/encrypt/decrypt");
  std::string be_params = "EHT-light-A", be_seed;
  unsigned be_reps = 5, be_threads = 1;
  cmd_bench->add_option("--params", be_params, "Parameter set")->check(params_validator);
  cmd_bench->add_option("--reps", be_reps, "Repetitions")->check(CLI::PositiveNumber);
  cmd_bench->add_option("--seed", be_seed, "64 hex chars");
  cmd_bench->add_option("--threads", be_threads, "Worker threads for key derivation");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (cmd_keygen->parsed()) {
    const auto& p = eht::preset(kg_params);
    const eht::Seed seed = resolve_seed(kg_seed);
    const auto kp = eht::keygen(p, seed, kg_threads);
    std::filesystem::create_directories(kg_out);
    const auto pub = std::filesystem::path(kg_out) / "key.ehtpub";
    const auto prv = std::filesystem::path(kg_out) / "key.ehtprv";
    eht::save_public_key(pub.string(), kp.pub);
    eht::save_private_key(prv.string(), kp.prv);
    std::cout << "wrote " << pub.string() << " (" << std::filesystem::file_size(pub)
              << " bytes) and " << prv.string() << " ("
              << std::filesystem::file_size(prv) << " bytes)\n";
    return 0;
  }

  if (cmd_encrypt->parsed()) {
    require_input(en_pub);
    require_input(en_in);
    const auto pk = eht::load_public_key(en_pub);
    const eht::Bytes msg = eht::read_file(en_in);
    if (msg.size() != pk.code.capacity_bytes())
      throw eht::FormatError("message must be exactly " +
                             std::to_string(pk.code.capacity_bytes()) + " bytes for " +
                             pk.params.name);
    eht::Rng rng(resolve_seed(en_seed), "err");
    const auto ct = eht::encrypt(pk, msg, rng);
    eht::save_ciphertext(en_out, pk.params, ct);
    return 0;
  }

  if (cmd_decrypt->parsed()) {
    require_input(de_prv);
    require_input(de_in);
    const auto sk = eht::load_private_key(de_prv);
    const auto [cp, ct] = eht::load_ciphertext(de_in);
    if (cp.name != sk.params.name)
      throw eht::FormatError("ciphertext parameter set does not match the key");
    const auto outcome =
        de_rule == "argmax" ? eht::decrypt_argmax(sk, ct) : eht::decrypt(sk, ct);
    switch (outcome.status) {
      case eht::DecryptionOutcome::Status::kSuccess:
        eht::write_file(de_out, outcome.plaintext);
        return 0;
      case eht::DecryptionOutcome::Status::kRejectNoCandidate:
        std::cerr << "decryption failure: no candidate at coordinate " << outcome.coordinate
                  << "\n";
        return kExitRejectNoCandidate;
      case eht::DecryptionOutcome::Status::kRejectAmbiguous:
        std::cerr << "decryption failure: ambiguous acceptance at coordinate "
                  << outcome.coordinate << "\n";
        return kExitRejectAmbiguous;
      case eht::DecryptionOutcome::Status::kCodeReject:
        std::cerr << "decryption failure: parity check rejected the block\n";
        return kExitCodeReject;
    }
    return kExitFormat;
  }

  if (cmd_estimate->parsed()) {
    if (!es_failure && !es_attacks && !es_all) es_all = true;
    std::vector<eht::ParameterSet> sets;
    if (!es_params.empty()) {
      sets.push_back(eht::preset(es_params));
    } else {
      for (const auto& p : eht::preset_registry())
        if (p.name != "toy") sets.push_back(p);
    }
    if (es_json) {
      json out;
      for (const auto& p : sets) {
        json entry;
        if (es_all || es_failure) entry["failure"] = failure_json(p);
        if (es_all || es_attacks) {
          entry["primal"] = primal_json(p);
          entry["key_recovery"] = key_recovery_json(p);
        }
        entry["sizes"] = sizes_json(p);
        out[p.name] = std::move(entry);
      }
      std::cout << out.dump(2) << "\n";
    } else {
      for (const auto& p : sets) {
        if (es_all || es_failure) print_failure_text(p);
        if (es_all || es_attacks) print_attacks_text(p);
      }
    }
    return 0;
  }

  if (cmd_bench->parsed()) {
    const auto& p = eht::preset(be_params);
    const eht::Seed seed = resolve_seed(be_seed);
    using clock = std::chrono::steady_clock;
    auto ms = [](clock::duration d) {
      return std::chrono::duration<double, std::milli>(d).count();
    };

    const auto t0 = clock::now();
#ifdef EHT_HAVE_RDTSC
    const auto c0 = __rdtsc();
#endif
    const auto kp = eht::keygen(p, seed, be_threads);
#ifdef EHT_HAVE_RDTSC
    const auto c1 = __rdtsc();
#endif
    const double keygen_ms = ms(clock::now() - t0);

    const std::size_t cap = kp.pub.code.capacity_bytes();
    eht::Bytes msg(cap);
    double enc_ms = 0.0, dec_ms = 0.0;
    std::uint64_t enc_cycles = 0, dec_cycles = 0;
    unsigned failures = 0;
    for (unsigned rep = 0; rep < be_reps; ++rep) {
      eht::Rng rng_msg(seed, "bmsg", rep);
      rng_msg.fill_bytes(msg.data(), msg.size());
      eht::Rng rng(seed, "berr", rep);
      const auto t1 = clock::now();
#ifdef EHT_HAVE_RDTSC
      const auto e0 = __rdtsc();
#endif
      const auto ct = eht::encrypt(kp.pub, msg, rng);
#ifdef EHT_HAVE_RDTSC
      const auto e1 = __rdtsc();
      enc_cycles += e1 - e0;
#endif
      const auto t2 = clock::now();
      const auto res = eht::decrypt(kp.prv, ct);
#ifdef EHT_HAVE_RDTSC
      dec_cycles += __rdtsc() - e1;
#endif
      const auto t3 = clock::now();
      enc_ms += ms(t2 - t1);
      dec_ms += ms(t3 - t2);
      if (!res.ok() || res.plaintext != msg) ++failures;
    }
    enc_ms /= be_reps;
    dec_ms /= be_reps;

    std::printf("%s: %u reps, %zu plaintext bytes per block\n", p.name.c_str(), be_reps, cap);
    std::printf("  keygen   %10.3f ms", keygen_ms);
#ifdef EHT_HAVE_RDTSC
    std::printf("  (%llu kcycles)", static_cast<unsigned long long>((c1 - c0) / 1000));
#endif
    std::printf("\n  encrypt  %10.3f ms", enc_ms);
#ifdef EHT_HAVE_RDTSC
    std::printf("  (%llu kcycles mean)",
                static_cast<unsigned long long>(enc_cycles / be_reps / 1000));
#endif
    std::printf("\n  decrypt  %10.3f ms", dec_ms);
#ifdef EHT_HAVE_RDTSC
    std::printf("  (%llu kcycles mean)",
                static_cast<unsigned long long>(dec_cycles / be_reps / 1000));
#endif
    std::printf("\n  throughput %.1f kB/s (encrypt+decrypt)\n",
                double(cap) / (enc_ms + dec_ms));
    if (failures) std::printf("  %u/%u blocks failed to decrypt\n", failures, be_reps);
    return 0;
  }

  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::system_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNoInput;
  } catch (const eht::FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFormat;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
