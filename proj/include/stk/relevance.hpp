/*  Copyright 2026 The stk authors.

    Licensed under the Apache License, Version 2.0 (the "License");
    you may not use this file except in compliance with the License.
    You may obtain a copy of the License at

        https://www.apache.org/licenses/LICENSE-2.0

    Unless required by applicable law or agreed to in writing, software
    distributed under the License is distributed on an "AS IS" BASIS,
    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
    See the License for the specific language governing permissions and
    limitations under the License. */

// Per-clue relevance statistics: hand judgments of clue occurrences are
// counted into a record whose total/occurrences ratio serves as the
// probability that the clue signals a non-literal reading.
//
// Two modes coexist deliberately. compute_relevance() derives a record from
// judgment labels, and there total = conventional + new + contexts always
// holds. import_recorded() stores previously published counts verbatim; when
// those category counts do not sum to the recorded total it emits a warning
// instead of rejecting, so historical records survive untouched.
//
// Judgment file: clue_name<TAB>doc_id<TAB>sentence_index<TAB>unit_index<TAB>label
// with label one of conventional | new | metaphoric_context | none.

#pragma once

#include <cstdio>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stk/diagnostics.hpp"
#include "stk/errors.hpp"
#include "stk/text.hpp"

namespace stk {

// Exact rational; counts never need rounding until rendered.
struct Ratio {
  long long numerator = 0;
  long long denominator = 1;

  double value() const { return static_cast<double>(numerator) / static_cast<double>(denominator); }

  std::string render() const {  // fixed 4 decimals, e.g. "0.5357"
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", value());
    return buf;
  }

  friend bool operator==(const Ratio& a, const Ratio& b) {
    return a.numerator * b.denominator == b.numerator * a.denominator;
  }
};

struct RelevanceRecord {
  long long occurrences = 0;
  long long conventional = 0;
  long long new_metaphors = 0;
  long long metaphoric_contexts = 0;
  long long total = 0;

  bool operator==(const RelevanceRecord&) const = default;
};

inline std::optional<Ratio> relevance_ratio(const RelevanceRecord& r) {
  if (r.occurrences <= 0) return std::nullopt;
  return Ratio{r.total, r.occurrences};
}

enum class JudgmentLabel { conventional, new_metaphor, metaphoric_context, none };

inline std::string_view to_string(JudgmentLabel l) {
  switch (l) {
    case JudgmentLabel::conventional: return "conventional";
    case JudgmentLabel::new_metaphor: return "new";
    case JudgmentLabel::metaphoric_context: return "metaphoric_context";
    case JudgmentLabel::none: return "none";
  }
  return "none";
}

inline std::optional<JudgmentLabel> judgment_label_from(std::string_view s) {
  if (s == "conventional") return JudgmentLabel::conventional;
  if (s == "new") return JudgmentLabel::new_metaphor;
  if (s == "metaphoric_context") return JudgmentLabel::metaphoric_context;
  if (s == "none") return JudgmentLabel::none;
  return std::nullopt;
}

// One hand judgment of one clue occurrence. The occurrence is identified by
// (doc_id, sentence_index, unit_index of the match start).
struct Judgment {
  std::string clue_name;
  std::string doc_id;
  std::size_t sentence_index = 0;
  std::size_t unit_index = 0;
  JudgmentLabel label = JudgmentLabel::none;

  bool operator==(const Judgment&) const = default;
};

// Counts the judgments of `clue_name`. Duplicate (clue, doc, sentence, unit)
// keys anywhere in the input are an error. A clue with no judgments yields
// the all-zero record.
inline RelevanceRecord compute_relevance(std::span<const Judgment> judgments,
                                         std::string_view clue_name) {
  std::set<std::string> seen;
  RelevanceRecord r;
  for (const Judgment& j : judgments) {
    std::string key = j.clue_name + '\t' + j.doc_id + '\t' + std::to_string(j.sentence_index) +
                      '\t' + std::to_string(j.unit_index);
    if (!seen.insert(key).second)
      throw Error("duplicate judgment for (clue=" + j.clue_name + ", doc=" + j.doc_id +
                  ", sentence=" + std::to_string(j.sentence_index) +
                  ", unit=" + std::to_string(j.unit_index) + ")");
    if (j.clue_name != clue_name) continue;
    ++r.occurrences;
    switch (j.label) {
      case JudgmentLabel::conventional: ++r.conventional; break;
      case JudgmentLabel::new_metaphor: ++r.new_metaphors; break;
      case JudgmentLabel::metaphoric_context: ++r.metaphoric_contexts; break;
      case JudgmentLabel::none: break;
    }
  }
  r.total = r.conventional + r.new_metaphors + r.metaphoric_contexts;
  return r;
}

// Stores previously recorded counts verbatim. total > occurrences is a hard
// error; a category sum that disagrees with total only warns.
inline RelevanceRecord import_recorded(long long occurrences, long long conventional,
                                       long long new_metaphors, long long metaphoric_contexts,
                                       long long total,
                                       std::vector<Diagnostic>* diagnostics = nullptr) {
  if (occurrences < 0 || conventional < 0 || new_metaphors < 0 || metaphoric_contexts < 0 ||
      total < 0)
    throw Error("relevance counts must be non-negative");
  if (total > occurrences)
    throw Error("relevance total " + std::to_string(total) + " exceeds occurrences " +
                std::to_string(occurrences));
  const long long sum = conventional + new_metaphors + metaphoric_contexts;
  if (sum != total && diagnostics)
    diagnostics->push_back(Diagnostic{Severity::warning, {},
                                      "relevance category counts sum to " + std::to_string(sum) +
                                          " but total is " + std::to_string(total)});
  return RelevanceRecord{occurrences, conventional, new_metaphors, metaphoric_contexts, total};
}

// Field-wise addition; associative and commutative, so per-document records
// can be aggregated in any grouping.
inline RelevanceRecord merge(const RelevanceRecord& a, const RelevanceRecord& b) {
  return RelevanceRecord{a.occurrences + b.occurrences, a.conventional + b.conventional,
                         a.new_metaphors + b.new_metaphors,
                         a.metaphoric_contexts + b.metaphoric_contexts, a.total + b.total};
}

inline std::vector<Judgment> parse_judgments(std::string_view text) {
  std::vector<Judgment> out;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? eol : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    std::size_t first = 0;
    while (first < line.size() && detail::is_space(line[first])) ++first;
    if (first == line.size() || line[first] == '#') continue;
    std::vector<std::string_view> fields;
    std::size_t p = 0;
    while (true) {
      const std::size_t tab = line.find('\t', p);
      fields.push_back(line.substr(p, tab == std::string_view::npos ? tab : tab - p));
      if (tab == std::string_view::npos) break;
      p = tab + 1;
    }
    if (fields.size() != 5)
      throw ParseError("malformed judgment line (want clue<TAB>doc<TAB>sentence<TAB>unit<TAB>label)",
                       lineno);
    Judgment j;
    j.clue_name = std::string(fields[0]);
    j.doc_id = std::string(fields[1]);
    auto parse_index = [&](std::string_view s) -> std::size_t {
      if (s.empty()) throw ParseError("empty index field", lineno);
      std::size_t v = 0;
      for (char c : s) {
        if (!detail::is_digit(c)) throw ParseError("bad index '" + std::string(s) + "'", lineno);
        v = v * 10 + static_cast<std::size_t>(c - '0');
      }
      return v;
    };
    j.sentence_index = parse_index(fields[2]);
    j.unit_index = parse_index(fields[3]);
    const auto label = judgment_label_from(fields[4]);
    if (!label) throw ParseError("unknown judgment label '" + std::string(fields[4]) + "'", lineno);
    j.label = *label;
    if (j.clue_name.empty() || j.doc_id.empty()) throw ParseError("empty clue or doc id", lineno);
    out.push_back(std::move(j));
  }
  return out;
}

inline std::vector<Judgment> load_judgments(const std::string& path) {
  try {
    return parse_judgments(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace stk
