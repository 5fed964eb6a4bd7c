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

// The clue catalog: declarative descriptions of the surface constructions
// that signal metaphor or analogy. Each clue pairs a flat Surface Syntactic
// Pattern (the ground) with a Lexical Marker constraint (the word to find on
// it), plus optional target/source role slots and a relevance record.
//
// Catalog file format (UTF-8, '#' comments, blank lines ignored):
//
//   skip GN ADV PUNCT           # optional, before any clue: matcher skip set
//   clue B.2.2.2
//     type    metaphor-analogy  # or: metaphor | analogy | context
//     comment free text
//     ssp     GN_0 GN_1 V_1 Adj_0 [prep] GN_2
//     lm      Adj_0 = pareil | semblable
//     target  GN_1
//     source  GN_2
//     relevance 28 3 2 12 15    # occurrences conventional new contexts total
//
// SSP elements carry a subscript label (GN_1) or none ([prep], prep).
// Brackets mark an element optional. Unlabeled elements take implicit index 0
// in their category and can never be referenced as lm/target/source slots.
// serialize_catalog() emits a canonical form: two-space indent, single spaces,
// fields in the order above; parse(serialize(c)) == c and serializing again
// is byte-identical.

#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stk/diagnostics.hpp"
#include "stk/errors.hpp"
#include "stk/relevance.hpp"
#include "stk/tagger.hpp"

namespace stk {

enum class ElementCategory { GN, GV, V, Adj, Adv, prep, det, pro, conj, tok };

inline std::string_view to_string(ElementCategory c) {
  switch (c) {
    case ElementCategory::GN: return "GN";
    case ElementCategory::GV: return "GV";
    case ElementCategory::V: return "V";
    case ElementCategory::Adj: return "Adj";
    case ElementCategory::Adv: return "Adv";
    case ElementCategory::prep: return "prep";
    case ElementCategory::det: return "det";
    case ElementCategory::pro: return "pro";
    case ElementCategory::conj: return "conj";
    case ElementCategory::tok: return "tok";
  }
  return "tok";
}

inline std::optional<ElementCategory> element_category_from(std::string_view s) {
  if (s == "GN") return ElementCategory::GN;
  if (s == "GV") return ElementCategory::GV;
  if (s == "V") return ElementCategory::V;
  if (s == "Adj") return ElementCategory::Adj;
  if (s == "Adv") return ElementCategory::Adv;
  if (s == "prep") return ElementCategory::prep;
  if (s == "det") return ElementCategory::det;
  if (s == "pro") return ElementCategory::pro;
  if (s == "conj") return ElementCategory::conj;
  if (s == "tok") return ElementCategory::tok;
  return std::nullopt;
}

struct PatternElement {
  ElementCategory category = ElementCategory::tok;
  int index = 0;
  bool optional = false;
  bool labeled = false;  // written with an explicit _k subscript

  bool operator==(const PatternElement&) const = default;
};

// Reference to a labeled SSP element.
struct SlotRef {
  ElementCategory category = ElementCategory::tok;
  int index = 0;

  auto operator<=>(const SlotRef&) const = default;
};

inline std::string to_string(const SlotRef& s) {
  return std::string(to_string(s.category)) + "_" + std::to_string(s.index);
}

inline std::string to_string(const PatternElement& e) {
  std::string body(to_string(e.category));
  if (e.labeled) body += "_" + std::to_string(e.index);
  return e.optional ? "[" + body + "]" : body;
}

struct MarkerConstraint {
  SlotRef slot;
  std::set<std::string> lexemes;  // lowercased lemmas

  bool operator==(const MarkerConstraint&) const = default;
};

enum class ClueType { metaphor_analogy, metaphor, analogy, context };

inline std::string_view to_string(ClueType t) {
  switch (t) {
    case ClueType::metaphor_analogy: return "metaphor-analogy";
    case ClueType::metaphor: return "metaphor";
    case ClueType::analogy: return "analogy";
    case ClueType::context: return "context";
  }
  return "metaphor-analogy";
}

inline std::optional<ClueType> clue_type_from(std::string_view s) {
  if (s == "metaphor-analogy") return ClueType::metaphor_analogy;
  if (s == "metaphor") return ClueType::metaphor;
  if (s == "analogy") return ClueType::analogy;
  if (s == "context") return ClueType::context;
  return std::nullopt;
}

struct ClueDefinition {
  ClueType type = ClueType::metaphor_analogy;
  std::string name;
  std::string comment;
  std::vector<PatternElement> ssp;
  MarkerConstraint lm;
  std::optional<SlotRef> target_slot;
  std::optional<SlotRef> source_slot;
  std::optional<RelevanceRecord> relevance;

  bool operator==(const ClueDefinition&) const = default;
};

// What the matcher may step over between two bound units: whole GN/GV units
// and/or free tokens of the given categories.
struct SkipSet {
  bool gn = false;
  bool gv = false;
  std::set<Category> token_categories{Category::ADV, Category::PUNCT};

  static SkipSet nothing() { return SkipSet{false, false, {}}; }

  bool operator==(const SkipSet&) const = default;
};

inline std::vector<std::string> skip_set_items(const SkipSet& s) {
  std::vector<std::string> items;
  if (s.gn) items.emplace_back("GN");
  if (s.gv) items.emplace_back("GV");
  static constexpr Category order[] = {Category::N,    Category::V,    Category::ADJ,
                                       Category::ADV,  Category::PREP, Category::DET,
                                       Category::PRO,  Category::CONJ, Category::PUNCT,
                                       Category::OTHER};
  for (Category c : order)
    if (s.token_categories.contains(c)) items.emplace_back(to_string(c));
  return items;
}

// Parses one skip item ("GN", "GV" or a token category name).
inline bool add_skip_item(SkipSet& s, std::string_view item) {
  if (item == "GN") { s.gn = true; return true; }
  if (item == "GV") { s.gv = true; return true; }
  if (const auto c = category_from(item)) { s.token_categories.insert(*c); return true; }
  return false;
}

struct Catalog {
  std::vector<ClueDefinition> clues;
  SkipSet skip_categories{};

  const ClueDefinition* find(std::string_view name) const {
    for (const ClueDefinition& c : clues)
      if (c.name == name) return &c;
    return nullptr;
  }

  bool operator==(const Catalog&) const = default;
};

// Position of the labeled element a slot refers to, if any.
inline std::optional<std::size_t> find_element(std::span<const PatternElement> ssp, SlotRef slot) {
  for (std::size_t i = 0; i < ssp.size(); ++i)
    if (ssp[i].labeled && ssp[i].category == slot.category && ssp[i].index == slot.index) return i;
  return std::nullopt;
}

namespace detail {

inline bool is_lowercased(std::string_view s) {
  for (char c : s)
    if (is_ascii_upper(static_cast<unsigned char>(c))) return false;
  return true;
}

inline void check_slot(const ClueDefinition& clue, SlotRef slot, std::string_view field,
                       std::vector<Diagnostic>& diags) {
  if (find_element(clue.ssp, slot)) return;
  bool unlabeled_exists = false;
  for (const PatternElement& e : clue.ssp)
    if (!e.labeled && e.category == slot.category && e.index == slot.index) unlabeled_exists = true;
  diags.push_back(Diagnostic{Severity::error, clue.name,
                             unlabeled_exists
                                 ? std::string(field) + " references unlabeled element " +
                                       to_string(slot)
                                 : "unknown slot " + to_string(slot) + " in " + std::string(field)});
}

}  // namespace detail

// Structural validation of one clue: returns one error per violated
// invariant, empty iff the clue is sound. Suspect-but-representable data
// (recorded relevance counts that disagree with their total) is reported
// separately by catalog_warnings().
inline std::vector<Diagnostic> validate_clue(const ClueDefinition& clue) {
  std::vector<Diagnostic> diags;
  auto error = [&](std::string msg) {
    diags.push_back(Diagnostic{Severity::error, clue.name, std::move(msg)});
  };

  if (clue.name.empty()) error("empty clue name");
  if (clue.ssp.empty()) error("empty ssp");
  for (std::size_t i = 0; i < clue.ssp.size(); ++i)
    for (std::size_t j = i + 1; j < clue.ssp.size(); ++j)
      if (clue.ssp[i].category == clue.ssp[j].category && clue.ssp[i].index == clue.ssp[j].index)
        error("duplicate element " + to_string(SlotRef{clue.ssp[i].category, clue.ssp[i].index}) +
              " in ssp");

  detail::check_slot(clue, clue.lm.slot, "lm", diags);
  if (clue.lm.lexemes.empty()) error("lm needs at least one lexeme");
  for (const std::string& lex : clue.lm.lexemes) {
    if (lex.empty()) error("empty lm lexeme");
    else if (!detail::is_lowercased(lex)) error("lm lexeme '" + lex + "' must be lowercased");
  }

  if (clue.target_slot) detail::check_slot(clue, *clue.target_slot, "target", diags);
  if (clue.source_slot) detail::check_slot(clue, *clue.source_slot, "source", diags);
  if (clue.target_slot && clue.source_slot && *clue.target_slot == *clue.source_slot)
    error("target and source must differ");

  if (clue.relevance) {
    const RelevanceRecord& r = *clue.relevance;
    if (r.occurrences < 0 || r.conventional < 0 || r.new_metaphors < 0 ||
        r.metaphoric_contexts < 0 || r.total < 0)
      error("negative relevance count");
    else if (r.total > r.occurrences)
      error("relevance total " + std::to_string(r.total) + " exceeds occurrences " +
            std::to_string(r.occurrences));
  }
  return diags;
}

// Warnings for sound-but-suspect clues: recorded relevance counts whose
// category sum disagrees with the recorded total are kept verbatim (import
// semantics) and flagged here.
inline std::vector<Diagnostic> catalog_warnings(const Catalog& catalog) {
  std::vector<Diagnostic> warnings;
  for (const ClueDefinition& clue : catalog.clues) {
    if (!clue.relevance) continue;
    const RelevanceRecord& r = *clue.relevance;
    if (r.total > r.occurrences || r.occurrences < 0 || r.conventional < 0 ||
        r.new_metaphors < 0 || r.metaphoric_contexts < 0 || r.total < 0)
      continue;  // already an error
    std::vector<Diagnostic> diags;
    import_recorded(r.occurrences, r.conventional, r.new_metaphors, r.metaphoric_contexts, r.total,
                    &diags);
    for (Diagnostic& d : diags) {
      d.clue_name = clue.name;
      warnings.push_back(std::move(d));
    }
  }
  return warnings;
}

inline std::vector<Diagnostic> validate_catalog(const Catalog& catalog) {
  std::vector<Diagnostic> diags;
  std::set<std::string> names;
  for (const ClueDefinition& clue : catalog.clues) {
    const auto d = validate_clue(clue);
    diags.insert(diags.end(), d.begin(), d.end());
    if (!clue.name.empty() && !names.insert(clue.name).second)
      diags.push_back(
          Diagnostic{Severity::error, clue.name, "duplicate clue name '" + clue.name + "'"});
  }
  return diags;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return s.substr(b, e - b);
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> parts;
  std::size_t p = 0;
  while (p < s.size()) {
    while (p < s.size() && is_space(s[p])) ++p;
    std::size_t q = p;
    while (q < s.size() && !is_space(s[q])) ++q;
    if (q > p) parts.push_back(s.substr(p, q - p));
    p = q;
  }
  return parts;
}

inline std::optional<int> parse_small_int(std::string_view s) {
  if (s.empty() || s.size() > 3) return std::nullopt;
  int v = 0;
  for (char c : s) {
    if (!is_digit(c)) return std::nullopt;
    v = v * 10 + (c - '0');
  }
  return v;
}

inline PatternElement parse_pattern_element(std::string_view tok, std::size_t lineno) {
  PatternElement el;
  if (tok.size() >= 2 && tok.front() == '[' && tok.back() == ']') {
    el.optional = true;
    tok = tok.substr(1, tok.size() - 2);
  }
  const std::size_t us = tok.rfind('_');
  std::string_view cat_name = tok;
  if (us != std::string_view::npos) {
    const auto idx = parse_small_int(tok.substr(us + 1));
    if (!idx) throw ParseError("bad element label in '" + std::string(tok) + "'", lineno);
    el.index = *idx;
    el.labeled = true;
    cat_name = tok.substr(0, us);
  }
  const auto cat = element_category_from(cat_name);
  if (!cat) throw ParseError("unknown ssp category '" + std::string(cat_name) + "'", lineno);
  el.category = *cat;
  return el;
}

inline SlotRef parse_slot(std::string_view tok, std::size_t lineno) {
  const std::size_t us = tok.rfind('_');
  if (us == std::string_view::npos)
    throw ParseError("slot reference '" + std::string(tok) + "' needs a _k label", lineno);
  const auto idx = parse_small_int(tok.substr(us + 1));
  const auto cat = element_category_from(tok.substr(0, us));
  if (!idx || !cat) throw ParseError("bad slot reference '" + std::string(tok) + "'", lineno);
  return SlotRef{*cat, *idx};
}

}  // namespace detail

// Parses a catalog. Hard problems (syntax, duplicate names, dangling slots)
// throw ParseError; validator warnings are appended to `warnings` when given.
inline Catalog parse_catalog(std::string_view text, std::vector<Diagnostic>* warnings = nullptr) {
  Catalog catalog;
  ClueDefinition current;
  std::set<std::string> seen_fields;
  bool in_clue = false;
  bool any_clue = false;
  bool skip_seen = false;
  std::size_t clue_line = 0;

  auto finalize = [&]() {
    if (!in_clue) return;
    for (const char* req : {"type", "ssp", "lm"})
      if (!seen_fields.contains(req))
        throw ParseError("clue '" + current.name + "' is missing required field '" + req + "'",
                         clue_line);
    catalog.clues.push_back(std::move(current));
    current = ClueDefinition{};
    seen_fields.clear();
    in_clue = false;
  };

  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? eol : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const std::string_view body = detail::trim(line);
    if (body.empty() || body.front() == '#') continue;

    std::size_t key_end = 0;
    while (key_end < body.size() && !detail::is_space(body[key_end])) ++key_end;
    const std::string_view key = body.substr(0, key_end);
    const std::string_view value = detail::trim(body.substr(key_end));

    if (key == "clue") {
      finalize();
      if (value.empty() || detail::split_ws(value).size() != 1)
        throw ParseError("clue name must be one token", lineno);
      current.name = std::string(value);
      in_clue = true;
      any_clue = true;
      clue_line = lineno;
      continue;
    }
    if (key == "skip") {
      if (in_clue || any_clue) throw ParseError("skip directive must precede clue blocks", lineno);
      if (skip_seen) throw ParseError("duplicate skip directive", lineno);
      skip_seen = true;
      catalog.skip_categories = SkipSet::nothing();
      for (std::string_view item : detail::split_ws(value))
        if (!add_skip_item(catalog.skip_categories, item))
          throw ParseError("unknown skip item '" + std::string(item) + "'", lineno);
      continue;
    }
    if (!in_clue) throw ParseError("field '" + std::string(key) + "' outside a clue block", lineno);
    if (!seen_fields.insert(std::string(key)).second)
      throw ParseError("duplicate field '" + std::string(key) + "'", lineno);

    if (key == "type") {
      const auto t = clue_type_from(value);
      if (!t) throw ParseError("unknown clue type '" + std::string(value) + "'", lineno);
      current.type = *t;
    } else if (key == "comment") {
      current.comment = std::string(value);
    } else if (key == "ssp") {
      const auto toks = detail::split_ws(value);
      if (toks.empty()) throw ParseError("empty ssp", lineno);
      for (std::string_view t : toks)
        current.ssp.push_back(detail::parse_pattern_element(t, lineno));
    } else if (key == "lm") {
      const std::size_t eq = value.find('=');
      if (eq == std::string_view::npos) throw ParseError("lm needs 'SLOT = lexeme | ...'", lineno);
      const auto slot_toks = detail::split_ws(value.substr(0, eq));
      if (slot_toks.size() != 1) throw ParseError("lm needs exactly one slot", lineno);
      current.lm.slot = detail::parse_slot(slot_toks[0], lineno);
      std::string_view rest = value.substr(eq + 1);
      while (true) {
        const std::size_t bar = rest.find('|');
        const std::string_view lex = detail::trim(rest.substr(0, bar));
        if (lex.empty()) throw ParseError("empty lm lexeme", lineno);
        current.lm.lexemes.insert(detail::ascii_lower(lex));
        if (bar == std::string_view::npos) break;
        rest = rest.substr(bar + 1);
      }
    } else if (key == "target") {
      current.target_slot = detail::parse_slot(value, lineno);
    } else if (key == "source") {
      current.source_slot = detail::parse_slot(value, lineno);
    } else if (key == "relevance") {
      const auto toks = detail::split_ws(value);
      if (toks.size() != 5)
        throw ParseError("relevance takes five counts (occurrences conventional new contexts total)",
                         lineno);
      long long counts[5];
      for (std::size_t i = 0; i < 5; ++i) {
        long long v = 0;
        for (char c : toks[i]) {
          if (!detail::is_digit(c)) throw ParseError("bad relevance count '" + std::string(toks[i]) + "'", lineno);
          v = v * 10 + (c - '0');
        }
        counts[i] = v;
      }
      current.relevance = RelevanceRecord{counts[0], counts[1], counts[2], counts[3], counts[4]};
    } else {
      throw ParseError("unknown key '" + std::string(key) + "'", lineno);
    }
  }
  finalize();

  const auto diags = validate_catalog(catalog);
  std::string errors;
  for (const Diagnostic& d : diags) {
    if (!errors.empty()) errors += "; ";
    errors += to_string(d);
  }
  if (!errors.empty()) throw ParseError(errors);
  if (warnings)
    for (Diagnostic& d : catalog_warnings(catalog)) warnings->push_back(std::move(d));
  return catalog;
}

inline Catalog load_catalog(const std::string& path, std::vector<Diagnostic>* warnings = nullptr) {
  try {
    return parse_catalog(read_file(path), warnings);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

// Canonical text form; see the header comment for the layout contract.
inline std::string serialize_catalog(const Catalog& catalog) {
  std::string out;
  bool first_block = true;
  auto begin_block = [&]() {
    if (!first_block) out += '\n';
    first_block = false;
  };

  if (catalog.skip_categories != SkipSet{}) {
    begin_block();
    out += "skip";
    for (const std::string& item : skip_set_items(catalog.skip_categories)) out += " " + item;
    out += '\n';
  }
  for (const ClueDefinition& clue : catalog.clues) {
    begin_block();
    out += "clue " + clue.name + '\n';
    out += "  type " + std::string(to_string(clue.type)) + '\n';
    if (!clue.comment.empty()) out += "  comment " + clue.comment + '\n';
    out += "  ssp";
    for (const PatternElement& e : clue.ssp) out += " " + to_string(e);
    out += '\n';
    out += "  lm " + to_string(clue.lm.slot) + " =";
    bool first_lex = true;
    for (const std::string& lex : clue.lm.lexemes) {
      out += first_lex ? " " : " | ";
      out += lex;
      first_lex = false;
    }
    out += '\n';
    if (clue.target_slot) out += "  target " + to_string(*clue.target_slot) + '\n';
    if (clue.source_slot) out += "  source " + to_string(*clue.source_slot) + '\n';
    if (clue.relevance) {
      const RelevanceRecord& r = *clue.relevance;
      out += "  relevance " + std::to_string(r.occurrences) + ' ' + std::to_string(r.conventional) +
             ' ' + std::to_string(r.new_metaphors) + ' ' + std::to_string(r.metaphoric_contexts) +
             ' ' + std::to_string(r.total) + '\n';
    }
  }
  return out;
}

// The clue's relevance ratio as a non-literal-meaning probability; absent
// when the clue has no record or no occurrences.
inline std::optional<Ratio> nonliteral_probability(const ClueDefinition& clue) {
  if (!clue.relevance) return std::nullopt;
  return relevance_ratio(*clue.relevance);
}

}  // namespace stk
