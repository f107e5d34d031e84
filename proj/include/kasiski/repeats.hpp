#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "kasiski/alphabet.hpp"

namespace kasiski {

constexpr std::size_t default_min_len = 3;
constexpr std::size_t default_max_key_len = Key::max_length;

// One repeated cryptogram. Each distance comes from an occurrence pair at
// which the match is maximal (cannot be extended left or right).
struct Repeat {
  std::string gram;
  std::vector<std::size_t> positions;  // sorted, distinct, size >= 2
  std::vector<std::size_t> distances;  // one per maximal occurrence pair, sorted

  bool operator==(const Repeat&) const = default;
};

struct RepeatReport {
  std::size_t min_len = default_min_len;
  std::vector<Repeat> repeats;         // by first position, then gram
  std::vector<std::size_t> distances;  // all repeats' distances, sorted

  bool operator==(const RepeatReport&) const = default;
};

struct Candidate {
  std::size_t key_length;
  double coverage;  // fraction of distances divisible by key_length

  bool operator==(const Candidate&) const = default;
};

struct FactorAnalysis {
  std::map<std::size_t, std::size_t> factor_counts;
  std::size_t total_distances = 0;
  std::vector<Candidate> candidates;  // coverage descending, then key_length ascending

  bool operator==(const FactorAnalysis&) const = default;
};

enum class Strength { Strong, Weak };

constexpr std::string_view to_string(Strength s) noexcept {
  return s == Strength::Strong ? "strong" : "weak";
}

struct StrengthVerdict {
  Strength verdict = Strength::Strong;
  std::optional<Repeat> witness;
  std::size_t repeat_count = 0;

  bool operator==(const StrengthVerdict&) const = default;
};

struct AttackResult {
  RepeatReport report;
  FactorAnalysis factors;
  StrengthVerdict strength;

  // Top-ranked candidate, only when the ciphertext is weak.
  std::optional<std::size_t> estimated_key_length() const {
    if (strength.verdict != Strength::Weak || factors.candidates.empty()) return std::nullopt;
    return factors.candidates.front().key_length;
  }

  // Every candidate that shares the top coverage.
  std::vector<std::size_t> top_tier() const {
    std::vector<std::size_t> out;
    for (const auto& c : factors.candidates) {
      if (c.coverage != factors.candidates.front().coverage) break;
      out.push_back(c.key_length);
    }
    return out;
  }

  bool operator==(const AttackResult&) const = default;
};

// Occurrences are indexed by their leading min_len-gram; every pair within a
// bucket is kept if it is left-maximal and its extension is grouped under the
// full matched gram. Overlapping occurrences are allowed.
inline RepeatReport find_repeats(const Message& ciphertext, std::size_t min_len = default_min_len) {
  if (min_len < 2) throw Error(ErrorCode::OutOfRange, "min_len must be at least 2");
  const std::string text = ciphertext.text();
  const std::size_t n = text.size();
  if (n < min_len) {
    throw Error(ErrorCode::MessageTooShort, "ciphertext has " + std::to_string(n) +
                                                " letters, fewer than min_len " +
                                                std::to_string(min_len));
  }

  const std::string_view view(text);
  std::unordered_map<std::string_view, std::vector<std::size_t>> index;
  for (std::size_t i = 0; i + min_len <= n; ++i) index[view.substr(i, min_len)].push_back(i);

  struct Group {
    std::vector<std::size_t> positions;
    std::vector<std::size_t> distances;
  };
  std::map<std::string_view, Group> groups;

  for (const auto& [gram, where] : index) {
    if (where.size() < 2) continue;
    for (std::size_t a = 0; a < where.size(); ++a) {
      for (std::size_t b = a + 1; b < where.size(); ++b) {
        const std::size_t i = where[a];
        const std::size_t j = where[b];
        if (i > 0 && text[i - 1] == text[j - 1]) continue;  // covered by the pair (i-1, j-1)
        std::size_t len = min_len;
        while (j + len < n && text[i + len] == text[j + len]) ++len;
        auto& g = groups[view.substr(i, len)];
        g.positions.push_back(i);
        g.positions.push_back(j);
        g.distances.push_back(j - i);
      }
    }
  }

  RepeatReport report;
  report.min_len = min_len;
  for (auto& [gram, g] : groups) {
    std::sort(g.positions.begin(), g.positions.end());
    g.positions.erase(std::unique(g.positions.begin(), g.positions.end()), g.positions.end());
    std::sort(g.distances.begin(), g.distances.end());
    report.distances.insert(report.distances.end(), g.distances.begin(), g.distances.end());
    report.repeats.push_back({std::string(gram), std::move(g.positions), std::move(g.distances)});
  }
  std::sort(report.repeats.begin(), report.repeats.end(), [](const Repeat& a, const Repeat& b) {
    return std::tie(a.positions.front(), a.gram) < std::tie(b.positions.front(), b.gram);
  });
  std::sort(report.distances.begin(), report.distances.end());
  return report;
}

// Counts, for each factor f in [2, max_key_len], how many distances it
// divides. Coverage ranking generalizes intersecting the divisor sets:
// a factor shared by every distance has coverage 1.
inline FactorAnalysis factor_analysis(const RepeatReport& report,
                                      std::size_t max_key_len = default_max_key_len) {
  if (max_key_len < 2) throw Error(ErrorCode::OutOfRange, "max_key_len must be at least 2");
  FactorAnalysis fa;
  fa.total_distances = report.distances.size();
  for (std::size_t d : report.distances) {
    const std::size_t limit = std::min(d, max_key_len);
    for (std::size_t f = 2; f <= limit; ++f) {
      if (d % f == 0) ++fa.factor_counts[f];
    }
  }
  for (const auto& [f, count] : fa.factor_counts) {
    fa.candidates.push_back(
        {f, static_cast<double>(count) / static_cast<double>(fa.total_distances)});
  }
  // Ties compare the raw counts so equal coverage is exact.
  std::stable_sort(fa.candidates.begin(), fa.candidates.end(),
                   [&](const Candidate& a, const Candidate& b) {
                     return fa.factor_counts.at(a.key_length) > fa.factor_counts.at(b.key_length);
                   });
  return fa;
}

inline StrengthVerdict classify_strength(const RepeatReport& report) {
  StrengthVerdict v;
  v.repeat_count = report.repeats.size();
  if (!report.repeats.empty()) {
    v.verdict = Strength::Weak;
    v.witness = report.repeats.front();
  }
  return v;
}

inline StrengthVerdict classify_strength(const Message& ciphertext,
                                         std::size_t min_len = default_min_len) {
  return classify_strength(find_repeats(ciphertext, min_len));
}

inline AttackResult attack(const Message& ciphertext, std::size_t min_len = default_min_len,
                           std::size_t max_key_len = default_max_key_len) {
  AttackResult r;
  r.report = find_repeats(ciphertext, min_len);
  r.factors = factor_analysis(r.report, max_key_len);
  r.strength = classify_strength(r.report);
  return r;
}

}  // namespace kasiski
