#pragma once

// Command-line front end. Exit status: 0 success, 1 runtime failure,
// 2 usage error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kasiski/cipher.hpp"
#include "kasiski/experiment.hpp"
#include "kasiski/repeats.hpp"
#include "kasiski/serialize.hpp"
#include "kasiski/sign_test.hpp"

namespace kasiski::cli {

enum ExitCode : int { ok = 0, failure = 1, usage = 2 };

struct RunConfig {
  std::string input;
  std::string key;
  std::string keyset;
  std::string corpus;
  std::string pairs;
  std::string variant = "standard";
  std::size_t min_len = default_min_len;
  std::size_t max_key_len = default_max_key_len;
  std::uint64_t seed = 42;
  std::string format = "text";
  std::string out;
  std::optional<std::size_t> negatives, positives, ties;
};

// Raised for argument problems found after CLI11 parsing succeeded.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  return read_file(path);
}

// Writes to --out when given, otherwise to the command's stdout stream.
inline void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
  if (cfg.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw Error(ErrorCode::Io, "cannot write " + cfg.out);
  f << text;
  if (!f) throw Error(ErrorCode::Io, "write failed: " + cfg.out);
}

inline Key parse_key(const std::string& text) {
  try {
    return Key(text);
  } catch (const Error& e) {
    throw UsageError(std::string("--key: ") + e.what());
  }
}

inline KeystreamStrategy parse_strategy(const std::string& variant) {
  return strategy_of(parse_variant(variant));
}

}  // namespace detail

inline int cmd_cipher(const RunConfig& cfg, bool decrypting, std::ostream& out) {
  const Key key = detail::parse_key(cfg.key);
  const Message input = normalize(detail::read_input(cfg.input));
  const auto strategy = detail::parse_strategy(cfg.variant);
  const Message result = decrypting ? decrypt(input, key, strategy) : encrypt(input, key, strategy);
  if (cfg.format == "json") {
    json j{{"schema_version", schema_version},
           {"kind", decrypting ? "decrypt" : "encrypt"},
           {"variant", cfg.variant},
           {"letters", result.text()},
           {"formatted", result.formatted()}};
    detail::emit(cfg, out, j.dump(2) + "\n");
  } else {
    detail::emit(cfg, out, result.formatted());
  }
  return ok;
}

inline int cmd_attack(const RunConfig& cfg, std::ostream& out) {
  const Message cipher = normalize(detail::read_input(cfg.input));
  const AttackResult r = attack(cipher, cfg.min_len, cfg.max_key_len);
  if (cfg.format == "json") {
    detail::emit(cfg, out, attack_to_json(r, cfg.max_key_len, cipher.size()).dump(2) + "\n");
  } else {
    detail::emit(cfg, out, render_attack(r, cipher.size()));
  }
  return ok;
}

inline std::string render_sign_test_text(const SignTestResult& r) {
  return render_frequencies(r.counts) + "\n" + render_test_statistics(r) + "\n" +
         render_percentages(r.counts) + "p (exact) = " + kasiski::detail::shortest(r.p_two_tailed) +
         (r.significant_at_005 ? "  significant at 0.05\n" : "  not significant at 0.05\n");
}

inline std::string sign_test_csv(const SignTestResult& r) {
  std::ostringstream s;
  s << "negatives,positives,ties,total,n_effective,p_two_tailed,significant_at_005\n"
    << r.counts.negatives << ',' << r.counts.positives << ',' << r.counts.ties << ','
    << r.counts.total << ',' << r.n_effective << ',' << kasiski::detail::shortest(r.p_two_tailed) << ','
    << (r.significant_at_005 ? "true" : "false") << '\n';
  return s.str();
}

inline int cmd_experiment(const RunConfig& cfg, std::ostream& out) {
  std::string corpus_dir = cfg.corpus;
#ifdef KASISKI_DEFAULT_CORPUS
  if (corpus_dir.empty()) corpus_dir = KASISKI_DEFAULT_CORPUS;
#endif
  if (corpus_dir.empty()) throw UsageError("experiment: no corpus directory given");
  const auto corpus = load_corpus(corpus_dir);
  const auto keys = cfg.keyset.empty() ? build_keyset(cfg.seed) : load_keyset(cfg.keyset);
  const auto result = run_experiment(corpus, keys, cfg.min_len);
  const auto test = sign_test(sign_counts(result.sample));

  std::ostringstream csv;
  write_observations_csv(csv, result.observations);

  if (cfg.format == "csv") {
    detail::emit(cfg, out, csv.str());
  } else if (cfg.format == "json") {
    json j{{"schema_version", schema_version},
           {"kind", "experiment"},
           {"observations", result.observations},
           {"n", result.sample.n()},
           {"sign_test", test}};
    detail::emit(cfg, out, j.dump(2) + "\n");
  } else {
    if (!cfg.out.empty()) detail::emit(cfg, out, csv.str());
    out << result.observations.size() << " observations, " << result.sample.n() << " pairs\n\n"
        << render_sign_test_text(test);
  }
  return ok;
}

inline int cmd_signtest(const RunConfig& cfg, std::ostream& out) {
  SignCounts counts;
  if (!cfg.pairs.empty()) {
    if (cfg.negatives || cfg.positives || cfg.ties) {
      throw UsageError("signtest: --pairs cannot be combined with explicit counts");
    }
    std::ifstream in(cfg.pairs, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + cfg.pairs);
    counts = sign_counts(parse_pairs_csv(in));
  } else if (cfg.negatives || cfg.positives || cfg.ties) {
    counts = SignCounts::of(cfg.negatives.value_or(0), cfg.positives.value_or(0), cfg.ties.value_or(0));
  } else {
    throw UsageError("signtest: give --pairs FILE or --negatives/--positives/--ties");
  }
  const auto r = sign_test(counts);
  if (cfg.format == "json") {
    json j = r;
    j["schema_version"] = schema_version;
    j["kind"] = "signtest";
    detail::emit(cfg, out, j.dump(2) + "\n");
  } else if (cfg.format == "csv") {
    detail::emit(cfg, out, sign_test_csv(r));
  } else {
    detail::emit(cfg, out, render_sign_test_text(r));
  }
  return ok;
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  CLI::App app{"Vigenere / modified Vigenere ciphers and the Kasiski key-length attack"};
  app.require_subcommand(1);
  RunConfig cfg;

  const auto variant_check = CLI::IsMember({"standard", "modified"});
  auto add_common = [&](CLI::App* sub, std::vector<std::string> formats) {
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember(formats));
    sub->add_option("--out", cfg.out, "Output file (default: stdout)");
  };

  auto* enc = app.add_subcommand("encrypt", "Encrypt a text file");
  auto* dec = app.add_subcommand("decrypt", "Decrypt a text file");
  for (auto* sub : {enc, dec}) {
    sub->add_option("input", cfg.input, "Input file, '-' for stdin")->required();
    sub->add_option("--key", cfg.key, "Key, letters A-Z only")->required();
    sub->add_option("--variant", cfg.variant, "standard (periodic) or modified (autokey)")
        ->check(variant_check);
    add_common(sub, {"text", "json"});
  }

  auto* atk = app.add_subcommand("attack", "Kasiski examination of a ciphertext file");
  atk->add_option("input", cfg.input, "Ciphertext file, '-' for stdin")->required();
  atk->add_option("--min-len", cfg.min_len, "Minimum repeated n-gram length")
      ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 20));
  atk->add_option("--max-key-len", cfg.max_key_len, "Largest key length considered")
      ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 20));
  add_common(atk, {"text", "json"});

  auto* exp = app.add_subcommand("experiment", "Paired standard/modified strength experiment");
  exp->add_option("corpus", cfg.corpus, "Directory of .txt plaintexts (default: bundled corpus)");
  exp->add_option("--keyset", cfg.keyset, "Key file: label,letters,class per line");
  exp->add_option("--seed", cfg.seed, "Seed for the generated keyset");
  exp->add_option("--min-len", cfg.min_len, "Minimum repeated n-gram length")
      ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 20));
  add_common(exp, {"text", "json", "csv"});

  auto* sgn = app.add_subcommand("signtest", "Exact two-tailed sign test");
  sgn->add_option("--pairs", cfg.pairs, "Pairs CSV or observation CSV");
  sgn->add_option("--negatives", cfg.negatives, "Pairs with Y < X");
  sgn->add_option("--positives", cfg.positives, "Pairs with Y > X");
  sgn->add_option("--ties", cfg.ties, "Pairs with Y = X");
  add_common(sgn, {"text", "json", "csv"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : usage;
  }

  try {
    if (enc->parsed()) return cmd_cipher(cfg, false, out);
    if (dec->parsed()) return cmd_cipher(cfg, true, out);
    if (atk->parsed()) return cmd_attack(cfg, out);
    if (exp->parsed()) return cmd_experiment(cfg, out);
    return cmd_signtest(cfg, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return failure;
  }
}

}  // namespace kasiski::cli
