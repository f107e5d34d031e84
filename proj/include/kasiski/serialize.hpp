#pragma once

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "kasiski/experiment.hpp"
#include "kasiski/repeats.hpp"
#include "kasiski/sign_test.hpp"

namespace kasiski {

using nlohmann::json;

// Bumped whenever a JSON field changes meaning or is removed.
constexpr int schema_version = 1;

inline void to_json(json& j, const Repeat& r) {
  j = json{{"gram", r.gram}, {"positions", r.positions}, {"distances", r.distances}};
}
inline void from_json(const json& j, Repeat& r) {
  j.at("gram").get_to(r.gram);
  j.at("positions").get_to(r.positions);
  j.at("distances").get_to(r.distances);
}

inline void to_json(json& j, const RepeatReport& r) {
  j = json{{"min_len", r.min_len}, {"repeats", r.repeats}, {"distances", r.distances}};
}
inline void from_json(const json& j, RepeatReport& r) {
  j.at("min_len").get_to(r.min_len);
  j.at("repeats").get_to(r.repeats);
  j.at("distances").get_to(r.distances);
}

inline void to_json(json& j, const FactorAnalysis& fa) {
  json counts = json::array();
  for (const auto& [f, c] : fa.factor_counts) counts.push_back({{"factor", f}, {"count", c}});
  json cands = json::array();
  for (const auto& c : fa.candidates) {
    cands.push_back({{"key_length", c.key_length}, {"coverage", c.coverage}});
  }
  j = json{{"total_distances", fa.total_distances}, {"factor_counts", counts}, {"candidates", cands}};
}
inline void from_json(const json& j, FactorAnalysis& fa) {
  fa = {};
  j.at("total_distances").get_to(fa.total_distances);
  for (const auto& e : j.at("factor_counts")) {
    fa.factor_counts[e.at("factor").get<std::size_t>()] = e.at("count").get<std::size_t>();
  }
  for (const auto& e : j.at("candidates")) {
    fa.candidates.push_back({e.at("key_length").get<std::size_t>(), e.at("coverage").get<double>()});
  }
}

inline void to_json(json& j, const StrengthVerdict& v) {
  j = json{{"verdict", to_string(v.verdict)}, {"repeat_count", v.repeat_count}};
  j["witness"] = v.witness ? json(*v.witness) : json(nullptr);
}
inline void from_json(const json& j, StrengthVerdict& v) {
  const auto verdict = j.at("verdict").get<std::string>();
  if (verdict != "strong" && verdict != "weak") {
    throw Error(ErrorCode::Parse, "unknown verdict '" + verdict + "'");
  }
  v.verdict = verdict == "weak" ? Strength::Weak : Strength::Strong;
  j.at("repeat_count").get_to(v.repeat_count);
  if (j.contains("witness") && !j.at("witness").is_null()) {
    v.witness = j.at("witness").get<Repeat>();
  } else {
    v.witness.reset();
  }
}

// Derived fields (estimate, top tier) are written for readers but ignored on parse.
inline json attack_to_json(const AttackResult& r, std::size_t max_key_len, std::size_t length) {
  json j{{"schema_version", schema_version},
         {"kind", "attack"},
         {"ciphertext_length", length},
         {"max_key_len", max_key_len},
         {"report", r.report},
         {"factors", r.factors},
         {"strength", r.strength},
         {"top_tier", r.top_tier()}};
  const auto est = r.estimated_key_length();
  j["estimated_key_length"] = est ? json(*est) : json(nullptr);
  return j;
}

inline void check_schema(const json& j, std::string_view kind) {
  if (!j.contains("schema_version") || j.at("schema_version") != schema_version) {
    throw Error(ErrorCode::Parse, "unsupported schema_version");
  }
  if (j.value("kind", std::string()) != kind) {
    throw Error(ErrorCode::Parse, "expected a '" + std::string(kind) + "' document");
  }
}

inline AttackResult attack_from_json(const json& j) {
  check_schema(j, "attack");
  AttackResult r;
  j.at("report").get_to(r.report);
  j.at("factors").get_to(r.factors);
  j.at("strength").get_to(r.strength);
  return r;
}

inline void to_json(json& j, const SignCounts& c) {
  j = json{{"negatives", c.negatives}, {"positives", c.positives}, {"ties", c.ties}, {"total", c.total}};
}
inline void from_json(const json& j, SignCounts& c) {
  j.at("negatives").get_to(c.negatives);
  j.at("positives").get_to(c.positives);
  j.at("ties").get_to(c.ties);
  j.at("total").get_to(c.total);
}

inline void to_json(json& j, const SignTestResult& r) {
  j = json{{"counts", r.counts},
           {"n_effective", r.n_effective},
           {"p_two_tailed", r.p_two_tailed},
           {"p_display", format_p(r.p_two_tailed, 3, true)},
           {"significant_at_005", r.significant_at_005}};
}

// ---- observation CSV / JSON -------------------------------------------------

constexpr std::string_view observation_csv_header =
    "plaintext_id,key_label,variant,verdict,ordinal,top_candidate,elapsed_ms";

namespace detail {

// Shortest representation that parses back to the same double.
inline std::string shortest(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

inline std::size_t parse_count(const std::string& s, std::size_t lineno) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::Parse, "line " + std::to_string(lineno) + ": bad integer '" + s + "'");
  }
  return v;
}

inline bool read_line(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

}  // namespace detail

// Identifiers must not contain commas; corpus ids and key labels never do
// unless a user file says so, which is rejected.
inline void write_observations_csv(std::ostream& out, const std::vector<Observation>& obs) {
  out << observation_csv_header << '\n';
  for (const auto& o : obs) {
    if (o.plaintext_id.find(',') != std::string::npos || o.key_label.find(',') != std::string::npos) {
      throw Error(ErrorCode::Parse, "identifier contains a comma: " + o.plaintext_id + "/" + o.key_label);
    }
    out << o.plaintext_id << ',' << o.key_label << ',' << to_string(o.variant) << ','
        << to_string(o.verdict) << ',' << o.ordinal() << ','
        << (o.top_candidate ? std::to_string(*o.top_candidate) : std::string()) << ','
        << detail::shortest(o.elapsed_ms) << '\n';
  }
}

inline Observation parse_observation_row(const std::vector<std::string>& f, std::size_t lineno) {
  if (f.size() != 7) {
    throw Error(ErrorCode::Parse, "line " + std::to_string(lineno) + ": expected 7 fields");
  }
  Observation o;
  o.plaintext_id = f[0];
  o.key_label = f[1];
  o.variant = parse_variant(f[2]);
  if (f[3] == "strong") {
    o.verdict = Strength::Strong;
  } else if (f[3] == "weak") {
    o.verdict = Strength::Weak;
  } else {
    throw Error(ErrorCode::Parse, "line " + std::to_string(lineno) + ": bad verdict '" + f[3] + "'");
  }
  if (detail::parse_count(f[4], lineno) != static_cast<std::size_t>(o.ordinal())) {
    throw Error(ErrorCode::Parse, "line " + std::to_string(lineno) + ": ordinal disagrees with verdict");
  }
  if (!f[5].empty()) o.top_candidate = detail::parse_count(f[5], lineno);
  double ms = 0;
  auto [ptr, ec] = std::from_chars(f[6].data(), f[6].data() + f[6].size(), ms);
  if (ec != std::errc() || ptr != f[6].data() + f[6].size()) {
    throw Error(ErrorCode::Parse, "line " + std::to_string(lineno) + ": bad elapsed_ms");
  }
  o.elapsed_ms = ms;
  return o;
}

inline std::vector<Observation> parse_observations_csv(std::istream& in) {
  std::string line;
  if (!detail::read_line(in, line) || line != observation_csv_header) {
    throw Error(ErrorCode::Parse, "missing observation CSV header");
  }
  std::vector<Observation> obs;
  std::size_t lineno = 1;
  while (detail::read_line(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    obs.push_back(parse_observation_row(detail::split_csv(line), lineno));
  }
  return obs;
}

inline void to_json(json& j, const Observation& o) {
  j = json{{"plaintext_id", o.plaintext_id},
           {"key_label", o.key_label},
           {"variant", to_string(o.variant)},
           {"verdict", to_string(o.verdict)},
           {"ordinal", o.ordinal()},
           {"elapsed_ms", o.elapsed_ms}};
  j["top_candidate"] = o.top_candidate ? json(*o.top_candidate) : json(nullptr);
}
inline void from_json(const json& j, Observation& o) {
  o.plaintext_id = j.at("plaintext_id").get<std::string>();
  o.key_label = j.at("key_label").get<std::string>();
  o.variant = parse_variant(j.at("variant").get<std::string>());
  const auto v = j.at("verdict").get<std::string>();
  if (v != "strong" && v != "weak") throw Error(ErrorCode::Parse, "bad verdict '" + v + "'");
  o.verdict = v == "weak" ? Strength::Weak : Strength::Strong;
  const auto& tc = j.at("top_candidate");
  o.top_candidate = tc.is_null() ? std::nullopt : std::optional<std::size_t>(tc.get<std::size_t>());
  j.at("elapsed_ms").get_to(o.elapsed_ms);
}

// ---- pairs CSV ---------------------------------------------------------------

constexpr std::string_view pairs_csv_header = "plaintext_id,key_label,x,y";

inline void write_pairs_csv(std::ostream& out, const PairedSample& sample) {
  out << pairs_csv_header << '\n';
  for (const auto& p : sample.pairs) {
    out << p.plaintext_id << ',' << p.key_label << ',' << p.x << ',' << p.y << '\n';
  }
}

// Accepts either a pairs CSV or an observation CSV (paired by id and key).
inline PairedSample parse_pairs_csv(std::istream& in) {
  std::string header;
  if (!detail::read_line(in, header)) throw Error(ErrorCode::Parse, "empty pairs file");
  if (header == observation_csv_header) {
    std::stringstream rest;
    rest << header << '\n' << in.rdbuf();
    return pair_observations(parse_observations_csv(rest));
  }
  if (header != pairs_csv_header) throw Error(ErrorCode::Parse, "unrecognized CSV header: " + header);
  PairedSample sample;
  std::string line;
  std::size_t lineno = 1;
  while (detail::read_line(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto f = detail::split_csv(line);
    if (f.size() != 4) throw Error(ErrorCode::Parse, "line " + std::to_string(lineno) + ": expected 4 fields");
    sample.pairs.push_back({f[0], f[1], static_cast<int>(detail::parse_count(f[2], lineno)),
                            static_cast<int>(detail::parse_count(f[3], lineno))});
  }
  return sample;
}

// ---- text rendering ------------------------------------------------------------

inline std::string render_frequencies(const SignCounts& c) {
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "Frequencies\n"
                "                                   N\n"
                "Y - X  Negative Differences(a)  %5zu\n"
                "       Positive Differences(b)  %5zu\n"
                "       Ties(c)                  %5zu\n"
                "       Total                    %5zu\n"
                "a. Y < X\n"
                "b. Y > X\n"
                "c. Y = X\n",
                c.negatives, c.positives, c.ties, c.total);
  return buf;
}

inline std::string render_test_statistics(const SignTestResult& r) {
  return "Test Statistics(a)\n"
         "                               Y - X\n"
         "Exact Sig. (2-tailed)          " +
         format_p(r.p_two_tailed, 3, true) +
         "(b)\n"
         "a. Sign Test\n"
         "b. Binomial distribution used.\n";
}

inline double percent(std::size_t part, std::size_t total) {
  return total == 0 ? 0.0 : 100.0 * static_cast<double>(part) / static_cast<double>(total);
}

inline std::string render_percentages(const SignCounts& c) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "Positive %6.2f%%\nNegative %6.2f%%\nTies     %6.2f%%\n",
                percent(c.positives, c.total), percent(c.negatives, c.total),
                percent(c.ties, c.total));
  return buf;
}

inline std::string render_percentages_csv(const SignCounts& c) {
  std::ostringstream out;
  out << "sign,count,percent\n"
      << "positive," << c.positives << ',' << detail::shortest(percent(c.positives, c.total)) << '\n'
      << "negative," << c.negatives << ',' << detail::shortest(percent(c.negatives, c.total)) << '\n'
      << "ties," << c.ties << ',' << detail::shortest(percent(c.ties, c.total)) << '\n';
  return out.str();
}

inline std::string render_attack(const AttackResult& r, std::size_t length) {
  std::ostringstream out;
  out << "Kasiski examination (min_len " << r.report.min_len << ", " << length << " letters)\n";
  out << "Repeated cryptograms: " << r.report.repeats.size() << '\n';
  for (const auto& rep : r.report.repeats) {
    out << "  " << rep.gram << "  positions";
    for (auto p : rep.positions) out << ' ' << p;
    out << "  distances";
    for (auto d : rep.distances) out << ' ' << d;
    out << '\n';
  }
  out << "Factors (" << r.factors.total_distances << " distances):\n";
  for (const auto& [f, c] : r.factors.factor_counts) out << "  " << f << ": " << c << '\n';
  out << "Candidates (key length, coverage):\n";
  for (const auto& c : r.factors.candidates) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "  %zu  %.4f\n", c.key_length, c.coverage);
    out << buf;
  }
  out << "Verdict: " << to_string(r.strength.verdict) << '\n';
  if (const auto est = r.estimated_key_length()) {
    out << "Estimated key length: " << *est << '\n';
    out << "Top tier:";
    for (auto f : r.top_tier()) out << ' ' << f;
    out << '\n';
  } else {
    out << "Estimated key length: none\n";
  }
  return out.str();
}

}  // namespace kasiski
