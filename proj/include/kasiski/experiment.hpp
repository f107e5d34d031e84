#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "kasiski/alphabet.hpp"
#include "kasiski/cipher.hpp"
#include "kasiski/repeats.hpp"
#include "kasiski/sign_test.hpp"

namespace kasiski {

enum class LengthClass { Short, Medium, Long };

struct ClassBounds {
  std::size_t min;
  std::size_t max;
};

// Disjoint letter ranges per key-length class.
constexpr ClassBounds bounds_of(LengthClass c) noexcept {
  switch (c) {
    case LengthClass::Short: return {4, 6};
    case LengthClass::Medium: return {8, 15};
    case LengthClass::Long: return {16, 25};
  }
  return {0, 0};
}

constexpr std::string_view to_string(LengthClass c) noexcept {
  switch (c) {
    case LengthClass::Short: return "short";
    case LengthClass::Medium: return "medium";
    case LengthClass::Long: return "long";
  }
  return "unknown";
}

inline LengthClass parse_length_class(std::string_view s) {
  std::string lower(s);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  if (lower == "short") return LengthClass::Short;
  if (lower == "medium") return LengthClass::Medium;
  if (lower == "long") return LengthClass::Long;
  throw Error(ErrorCode::Parse, "unknown key class '" + std::string(s) + "'");
}

struct KeySpec {
  Key key;
  LengthClass length_class;
  std::string language_tag;

  // Validates the key length against the class bounds.
  KeySpec(Key k, LengthClass c, std::string tag = "generated")
      : key(std::move(k)), length_class(c), language_tag(std::move(tag)) {
    const auto b = bounds_of(c);
    if (key.size() < b.min || key.size() > b.max) {
      throw Error(ErrorCode::InvalidClassBounds,
                  "key '" + key.label() + "' has " + std::to_string(key.size()) +
                      " letters, outside " + std::string(to_string(c)) + " range " +
                      std::to_string(b.min) + "-" + std::to_string(b.max));
    }
  }

  const std::string& label() const noexcept { return key.label(); }

  bool operator==(const KeySpec&) const = default;
};

struct ClassCounts {
  std::size_t short_keys = 4;
  std::size_t medium_keys = 4;
  std::size_t long_keys = 2;
};

namespace detail {

// Unbiased draw in [0, bound) from raw 64-bit engine output. The standard
// distributions are implementation-defined, this is not.
inline std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

}  // namespace detail

inline std::vector<KeySpec> build_keyset(std::uint64_t seed, ClassCounts counts = {}) {
  std::mt19937_64 rng(seed);
  std::vector<KeySpec> keys;
  const std::array<std::pair<LengthClass, std::size_t>, 3> plan{{
      {LengthClass::Short, counts.short_keys},
      {LengthClass::Medium, counts.medium_keys},
      {LengthClass::Long, counts.long_keys},
  }};
  for (const auto& [cls, count] : plan) {
    const auto b = bounds_of(cls);
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t len = b.min + detail::bounded(rng, b.max - b.min + 1);
      std::string letters(len, 'A');
      for (char& ch : letters) ch = static_cast<char>('A' + detail::bounded(rng, Alphabet::size));
      std::string label = std::string(to_string(cls)) + std::to_string(i + 1);
      keys.emplace_back(Key(letters, std::move(label)), cls);
    }
  }
  return keys;
}

// `label,letters,class[,language]` per line; blank lines and '#' comments skipped.
inline std::vector<KeySpec> parse_keyset(std::istream& in) {
  std::vector<KeySpec> keys;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    if (fields.size() < 3 || fields.size() > 4) {
      throw Error(ErrorCode::Parse, "keyset line " + std::to_string(lineno) +
                                        ": expected label,letters,class[,language]");
    }
    if (fields[0] == "label" && lineno == 1) continue;  // header
    keys.emplace_back(Key(fields[1], fields[0]), parse_length_class(fields[2]),
                      fields.size() == 4 ? fields[3] : std::string("user"));
  }
  return keys;
}

inline std::vector<KeySpec> load_keyset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open keyset " + path.string());
  return parse_keyset(in);
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct CorpusText {
  std::string id;
  Message plaintext;
};

// Every *.txt in the directory, sorted by id (the file stem).
inline std::vector<CorpusText> load_corpus(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw Error(ErrorCode::Io, "not a directory: " + dir.string());
  std::vector<CorpusText> corpus;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".txt") continue;
    const std::string id = entry.path().stem().string();
    try {
      corpus.push_back({id, normalize(read_file(entry.path()))});
    } catch (const Error& e) {
      throw Error(e.code(), id + ": " + e.what());
    }
  }
  if (corpus.empty()) throw Error(ErrorCode::Io, "no .txt files in " + dir.string());
  std::sort(corpus.begin(), corpus.end(),
            [](const CorpusText& a, const CorpusText& b) { return a.id < b.id; });
  return corpus;
}

enum class Variant { Standard, Modified };

constexpr std::string_view to_string(Variant v) noexcept {
  return v == Variant::Standard ? "standard" : "modified";
}

constexpr KeystreamStrategy strategy_of(Variant v) noexcept {
  return v == Variant::Standard ? KeystreamStrategy::PeriodicRepeat
                                : KeystreamStrategy::AutokeyPlaintext;
}

inline Variant parse_variant(std::string_view s) {
  if (s == "standard") return Variant::Standard;
  if (s == "modified") return Variant::Modified;
  throw Error(ErrorCode::Parse, "unknown variant '" + std::string(s) + "'");
}

// Strong = 1, Weak = 0, so Y > X means the modification made the pair stronger.
constexpr int ordinal_of(Strength s) noexcept { return s == Strength::Strong ? 1 : 0; }

struct Observation {
  std::string plaintext_id;
  std::string key_label;
  Variant variant = Variant::Standard;
  Strength verdict = Strength::Strong;
  std::optional<std::size_t> top_candidate;
  double elapsed_ms = 0.0;  // metadata only

  int ordinal() const noexcept { return ordinal_of(verdict); }

  // Equality ignoring the timing.
  bool same_outcome(const Observation& o) const {
    return plaintext_id == o.plaintext_id && key_label == o.key_label && variant == o.variant &&
           verdict == o.verdict && top_candidate == o.top_candidate;
  }

  bool operator==(const Observation&) const = default;
};

struct Pair {
  std::string plaintext_id;
  std::string key_label;
  int x = 0;  // Standard
  int y = 0;  // Modified

  bool operator==(const Pair&) const = default;
};

struct PairedSample {
  std::vector<Pair> pairs;

  std::size_t n() const noexcept { return pairs.size(); }

  std::vector<OrdinalPair> ordinals() const {
    std::vector<OrdinalPair> out;
    out.reserve(pairs.size());
    for (const auto& p : pairs) out.emplace_back(p.x, p.y);
    return out;
  }

  bool operator==(const PairedSample&) const = default;
};

inline SignCounts sign_counts(const PairedSample& sample) { return sign_counts(sample.ordinals()); }

inline Observation observe(const CorpusText& text, const KeySpec& key, Variant variant,
                           std::size_t min_len) {
  const auto start = std::chrono::steady_clock::now();
  const Message cipher = encrypt(text.plaintext, key.key, strategy_of(variant));
  const AttackResult result = attack(cipher, min_len);
  const auto stop = std::chrono::steady_clock::now();
  Observation o;
  o.plaintext_id = text.id;
  o.key_label = key.label();
  o.variant = variant;
  o.verdict = result.strength.verdict;
  o.top_candidate = result.estimated_key_length();
  o.elapsed_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  return o;
}

// Pairs remain in observation order. Throws Parse if a (plaintext, key)
// lacks exactly one observation per variant.
inline PairedSample pair_observations(const std::vector<Observation>& observations) {
  struct Slot {
    std::string plaintext_id, key_label;
    std::optional<int> x, y;
  };
  std::vector<Slot> slots;
  for (const auto& o : observations) {
    auto it = std::find_if(slots.begin(), slots.end(), [&](const Slot& s) {
      return s.plaintext_id == o.plaintext_id && s.key_label == o.key_label;
    });
    if (it == slots.end()) {
      slots.push_back({o.plaintext_id, o.key_label, std::nullopt, std::nullopt});
      it = std::prev(slots.end());
    }
    auto& target = o.variant == Variant::Standard ? it->x : it->y;
    if (target) {
      throw Error(ErrorCode::Parse, "duplicate " + std::string(to_string(o.variant)) +
                                        " observation for " + o.plaintext_id + "/" + o.key_label);
    }
    target = o.ordinal();
  }
  PairedSample sample;
  for (const auto& s : slots) {
    if (!s.x || !s.y) {
      throw Error(ErrorCode::Parse, "unpaired observation for " + s.plaintext_id + "/" + s.key_label);
    }
    sample.pairs.push_back({s.plaintext_id, s.key_label, *s.x, *s.y});
  }
  return sample;
}

struct ExperimentResult {
  std::vector<Observation> observations;  // (plaintext_id, key_label, variant) order
  PairedSample sample;
};

inline ExperimentResult run_experiment(const std::vector<CorpusText>& corpus,
                                       const std::vector<KeySpec>& keys,
                                       std::size_t min_len = default_min_len) {
  if (corpus.empty()) throw Error(ErrorCode::EmptyMessage, "corpus is empty");
  if (keys.empty()) throw Error(ErrorCode::EmptyKey, "keyset is empty");
  std::vector<const CorpusText*> texts;
  for (const auto& t : corpus) texts.push_back(&t);
  std::sort(texts.begin(), texts.end(), [](auto* a, auto* b) { return a->id < b->id; });
  std::vector<const KeySpec*> ordered_keys;
  for (const auto& k : keys) ordered_keys.push_back(&k);
  std::sort(ordered_keys.begin(), ordered_keys.end(),
            [](auto* a, auto* b) { return a->label() < b->label(); });

  ExperimentResult result;
  for (const CorpusText* text : texts) {
    for (const KeySpec* key : ordered_keys) {
      for (Variant v : {Variant::Standard, Variant::Modified}) {
        try {
          result.observations.push_back(observe(*text, *key, v, min_len));
        } catch (const Error& e) {
          throw Error(e.code(), text->id + "/" + key->label() + ": " + e.what());
        }
      }
    }
  }
  result.sample = pair_observations(result.observations);
  return result;
}

}  // namespace kasiski
