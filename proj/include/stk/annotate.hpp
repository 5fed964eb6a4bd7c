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

// End-to-end pipeline: tokenize -> tag -> chunk -> match, emitting standoff
// annotation records, plus the inline-mark presentation view and per-clue
// corpus statistics.
//
// Standoff line (one record):
//   doc<TAB>sentence<TAB>clue<TAB>start<TAB>len<TAB>target_start<TAB>target_len
//      <TAB>source_start<TAB>source_len<TAB>marker<TAB>prob
// Absent role spans print "-" in both columns; an absent probability prints
// "n/a". Offsets are byte offsets into the document.
//
// Inline marks wrap role spans:  <<clue NAME target>>...<</>>  with
// configurable delimiter strings (defaults are U+27EA/U+27EB, rare in text).
// Document occurrences of the open delimiter are escaped as an empty "q" tag,
// so strip_marks(mark_inline(text, records)) == text holds for any input.

#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stk/catalog.hpp"
#include "stk/chunker.hpp"
#include "stk/matcher.hpp"
#include "stk/relevance.hpp"
#include "stk/tagger.hpp"
#include "stk/text.hpp"

namespace stk {

struct AnnotationRecord {
  std::string doc_id;
  std::size_t sentence_index = 0;
  std::string clue_name;
  Span match_span;
  std::optional<Span> target_span;
  std::optional<Span> source_span;
  std::string marker_surface;
  std::optional<Ratio> probability;

  bool operator==(const AnnotationRecord&) const = default;
};

struct MarkDelims {
  std::string open = "⟪";   // ⟪
  std::string close = "⟫";  // ⟫
};

struct AnnotateOptions {
  std::optional<SkipSet> skip;  // overrides the catalog's skip set
  bool all_matches = false;     // per-start candidates instead of non-overlapping
  MarkDelims delims{};
};

// Matches a catalog over already tagged sentences.
inline std::vector<AnnotationRecord> annotate_tagged(
    std::string_view doc_id, const std::vector<std::vector<TaggedToken>>& sentences,
    const Catalog& catalog, const AnnotateOptions& options = {}) {
  const SkipSet& skip = options.skip ? *options.skip : catalog.skip_categories;
  const MatchPolicy policy =
      options.all_matches ? MatchPolicy::all_starts : MatchPolicy::leftmost_nonoverlapping;

  std::map<std::string_view, std::optional<Ratio>> probability;
  for (const ClueDefinition& clue : catalog.clues) probability[clue.name] = nonliteral_probability(clue);

  std::vector<AnnotationRecord> out;
  for (std::size_t si = 0; si < sentences.size(); ++si) {
    const std::vector<Unit> units = chunk(sentences[si]);
    for (const Match& m : match_all(catalog, units, skip, policy)) {
      AnnotationRecord rec;
      rec.doc_id = std::string(doc_id);
      rec.sentence_index = si;
      rec.clue_name = m.clue_name;
      rec.match_span = Span{units[m.first_unit].span().start, units[m.last_unit].span().end};
      rec.target_span = m.target_span;
      rec.source_span = m.source_span;
      rec.marker_surface = m.marker_surface;
      rec.probability = probability[m.clue_name];
      out.push_back(std::move(rec));
    }
  }
  return out;
}

inline std::vector<AnnotationRecord> annotate_document(std::string_view doc_id,
                                                       std::string_view text,
                                                       const Catalog& catalog,
                                                       const Lexicon& lexicon,
                                                       std::span<const TransformationRule> rules,
                                                       const AnnotateOptions& options = {}) {
  std::vector<std::vector<TaggedToken>> sentences;
  for (const Sentence& s : tokenize_document(text).sentences)
    sentences.push_back(tag(s.tokens, lexicon, rules));
  return annotate_tagged(doc_id, sentences, catalog, options);
}

struct FileError {
  std::string path;
  std::string message;
};

// Processes each file independently; a failing file is reported and skipped,
// the rest of the corpus still goes through. Records come back sorted by
// (doc, sentence, match start).
inline std::vector<AnnotationRecord> annotate_corpus(std::span<const std::string> paths,
                                                     const Catalog& catalog,
                                                     const Lexicon& lexicon,
                                                     std::span<const TransformationRule> rules,
                                                     const AnnotateOptions& options = {},
                                                     std::vector<FileError>* errors = nullptr) {
  std::vector<AnnotationRecord> out;
  for (const std::string& path : paths) {
    try {
      const std::string text = read_file(path);
      auto records = annotate_document(path, text, catalog, lexicon, rules, options);
      out.insert(out.end(), std::make_move_iterator(records.begin()),
                 std::make_move_iterator(records.end()));
    } catch (const Error& e) {
      if (errors) errors->push_back(FileError{path, e.what()});
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const AnnotationRecord& a, const AnnotationRecord& b) {
    if (a.doc_id != b.doc_id) return a.doc_id < b.doc_id;
    if (a.sentence_index != b.sentence_index) return a.sentence_index < b.sentence_index;
    return a.match_span.start < b.match_span.start;
  });
  return out;
}

// --- standoff format ---

inline std::string format_standoff(const AnnotationRecord& r) {
  if (r.doc_id.find('\t') != std::string::npos || r.doc_id.find('\n') != std::string::npos)
    throw Error("doc id must not contain tabs or newlines: " + r.doc_id);
  auto span_cols = [](const std::optional<Span>& s) {
    if (!s) return std::string("-\t-");
    return std::to_string(s->start) + '\t' + std::to_string(s->length());
  };
  std::string out = r.doc_id + '\t' + std::to_string(r.sentence_index) + '\t' + r.clue_name + '\t' +
                    std::to_string(r.match_span.start) + '\t' +
                    std::to_string(r.match_span.length()) + '\t' + span_cols(r.target_span) + '\t' +
                    span_cols(r.source_span) + '\t' + r.marker_surface + '\t';
  out += r.probability ? r.probability->render() : "n/a";
  return out;
}

inline std::string format_standoff(std::span<const AnnotationRecord> records) {
  std::string out;
  for (const AnnotationRecord& r : records) {
    out += format_standoff(r);
    out += '\n';
  }
  return out;
}

inline AnnotationRecord parse_standoff_line(std::string_view line, std::size_t lineno = 0) {
  std::vector<std::string_view> fields;
  std::size_t p = 0;
  while (true) {
    const std::size_t tab = line.find('\t', p);
    fields.push_back(line.substr(p, tab == std::string_view::npos ? tab : tab - p));
    if (tab == std::string_view::npos) break;
    p = tab + 1;
  }
  if (fields.size() != 11) throw ParseError("standoff record needs 11 tab-separated fields", lineno);
  auto number = [&](std::string_view s) -> std::size_t {
    std::size_t v = 0;
    if (s.empty()) throw ParseError("empty numeric field", lineno);
    for (char c : s) {
      if (!detail::is_digit(c)) throw ParseError("bad number '" + std::string(s) + "'", lineno);
      v = v * 10 + static_cast<std::size_t>(c - '0');
    }
    return v;
  };
  auto span_of = [&](std::string_view a, std::string_view b) -> std::optional<Span> {
    if (a == "-" && b == "-") return std::nullopt;
    const std::size_t start = number(a);
    return Span{start, start + number(b)};
  };
  AnnotationRecord r;
  r.doc_id = std::string(fields[0]);
  r.sentence_index = number(fields[1]);
  r.clue_name = std::string(fields[2]);
  const std::size_t start = number(fields[3]);
  r.match_span = Span{start, start + number(fields[4])};
  r.target_span = span_of(fields[5], fields[6]);
  r.source_span = span_of(fields[7], fields[8]);
  r.marker_surface = std::string(fields[9]);
  if (fields[10] != "n/a") {
    // decimal probabilities re-read as ten-thousandths; exact ratios only
    // survive in-process
    char* endp = nullptr;
    const std::string prob(fields[10]);
    const double v = std::strtod(prob.c_str(), &endp);
    if (endp == prob.c_str()) throw ParseError("bad probability '" + prob + "'", lineno);
    r.probability = Ratio{static_cast<long long>(std::llround(v * 10000)), 10000};
  }
  return r;
}

inline std::vector<AnnotationRecord> parse_standoff(std::string_view text) {
  std::vector<AnnotationRecord> out;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? eol : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (detail::trim(line).empty() || detail::trim(line).front() == '#') continue;
    out.push_back(parse_standoff_line(line, lineno));
  }
  return out;
}

// --- inline marks ---

namespace detail {

inline void emit_escaped(std::string& out, std::string_view chunk, const MarkDelims& d) {
  std::size_t p = 0;
  while (true) {
    const std::size_t o = chunk.find(d.open, p);
    if (o == std::string_view::npos) {
      out += chunk.substr(p);
      return;
    }
    out += chunk.substr(p, o - p);
    out += d.open;
    out += 'q';
    out += d.close;  // escaped literal open delimiter
    p = o + d.open.size();
  }
}

}  // namespace detail

// Wraps each record's target/source span in mark tags. Records whose role
// spans overlap already marked ones are skipped with a warning (they remain
// in the standoff output). Removing the marks restores the text exactly.
inline std::string mark_inline(std::string_view text, std::span<const AnnotationRecord> records,
                               const MarkDelims& delims = {},
                               std::vector<std::string>* warnings = nullptr) {
  struct RoleMark {
    Span span;
    std::string_view clue;
    std::string_view role;
  };
  auto overlaps = [](Span a, Span b) { return a.start < b.end && b.start < a.end; };

  std::vector<RoleMark> accepted;
  for (const AnnotationRecord& rec : records) {
    if (rec.clue_name.find(delims.open) != std::string::npos ||
        rec.clue_name.find(delims.close) != std::string::npos)
      throw Error("clue name contains a mark delimiter: " + rec.clue_name);
    std::vector<RoleMark> cand;
    if (rec.target_span) cand.push_back(RoleMark{*rec.target_span, rec.clue_name, "target"});
    if (rec.source_span) cand.push_back(RoleMark{*rec.source_span, rec.clue_name, "source"});
    bool clash = false;
    for (const RoleMark& c : cand) {
      if (c.span.end > text.size() || c.span.start > c.span.end)
        throw Error("role span out of bounds in record for clue '" + rec.clue_name + "'");
      for (const RoleMark& a : accepted)
        if (overlaps(c.span, a.span)) clash = true;
    }
    if (cand.size() == 2 && overlaps(cand[0].span, cand[1].span)) clash = true;
    if (clash) {
      if (warnings)
        warnings->push_back("record for clue '" + rec.clue_name + "' at offset " +
                            std::to_string(rec.match_span.start) +
                            " overlaps an earlier mark; skipped inline");
      continue;
    }
    accepted.insert(accepted.end(), cand.begin(), cand.end());
  }
  std::sort(accepted.begin(), accepted.end(), [](const RoleMark& a, const RoleMark& b) {
    if (a.span.start != b.span.start) return a.span.start < b.span.start;
    return a.span.end < b.span.end;  // zero-length spans first at a shared start
  });

  std::string out;
  out.reserve(text.size() + accepted.size() * 24);
  std::size_t p = 0;
  for (const RoleMark& m : accepted) {
    detail::emit_escaped(out, text.substr(p, m.span.start - p), delims);
    out += delims.open;
    out += "clue ";
    out += m.clue;
    out += ' ';
    out += m.role;
    out += delims.close;
    detail::emit_escaped(out, text.substr(m.span.start, m.span.length()), delims);
    out += delims.open;
    out += '/';
    out += delims.close;
    p = m.span.end;
  }
  detail::emit_escaped(out, text.substr(p), delims);
  return out;
}

// Removes mark tags and unescapes literal delimiters. Anything between the
// delimiters that is not a recognized tag passes through untouched.
inline std::string strip_marks(std::string_view text, const MarkDelims& delims = {}) {
  std::string out;
  out.reserve(text.size());
  std::size_t p = 0;
  while (true) {
    const std::size_t o = text.find(delims.open, p);
    if (o == std::string_view::npos) {
      out += text.substr(p);
      return out;
    }
    out += text.substr(p, o - p);
    const std::size_t body = o + delims.open.size();
    const std::size_t c = text.find(delims.close, body);
    if (c == std::string_view::npos) {
      out += text.substr(o);
      return out;
    }
    const std::string_view content = text.substr(body, c - body);
    if (content == "q") out += delims.open;
    else if (content != "/" && !content.starts_with("clue ")) out += text.substr(o, c + delims.close.size() - o);
    p = c + delims.close.size();
  }
}

// --- corpus statistics ---

struct ClueStats {
  std::string clue_name;
  std::size_t documents = 0;
  std::size_t occurrences = 0;
  std::size_t min_per_document = 0;
  std::size_t max_per_document = 0;

  bool operator==(const ClueStats&) const = default;
};

inline std::vector<ClueStats> corpus_stats(std::span<const AnnotationRecord> records) {
  std::map<std::string, std::map<std::string, std::size_t>> per_clue;
  for (const AnnotationRecord& r : records) ++per_clue[r.clue_name][r.doc_id];
  std::vector<ClueStats> out;
  for (const auto& [clue, docs] : per_clue) {
    ClueStats s;
    s.clue_name = clue;
    s.documents = docs.size();
    s.min_per_document = std::numeric_limits<std::size_t>::max();
    for (const auto& [doc, count] : docs) {
      s.occurrences += count;
      s.min_per_document = std::min(s.min_per_document, count);
      s.max_per_document = std::max(s.max_per_document, count);
    }
    out.push_back(std::move(s));
  }
  return out;  // std::map iteration is already name-sorted
}

}  // namespace stk
