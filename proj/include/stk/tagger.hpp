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

// Part-of-speech tagging: a lexicon baseline with a suffix guesser and a
// default tag, corrected by ordered contextual transformation rules. Rules
// are applied one full left-to-right pass each, matching against the tags as
// they stood at the start of that rule's pass.
//
// File formats (UTF-8, '#' comment lines, blank lines ignored):
//
//   lexicon   surface<TAB>CAT[:gender][:number]<TAB>lemma
//             @suffix <suffix> <CAT[:g][:n]>     guesser entries, tried in order
//             @default <CAT[:g][:n]>             tag for unknown words
//   rules     FROM>TO TRIGGER arg...
//             triggers: prev_tag_is CAT | next_tag_is CAT | prev_word_is W |
//                       next_word_is W | surrounded_by_tags CAT CAT
//   tagged    surface<TAB>CAT[:g][:n]<TAB>lemma, one blank line between
//             sentences (bit-exact interop format; no comments)
//
// Gender letters are m/f and number letters s/p; the two sets are disjoint,
// so "N:s" and "N:m" are both unambiguous.

#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "stk/errors.hpp"
#include "stk/text.hpp"

namespace stk {

enum class Category { N, V, ADJ, ADV, PREP, DET, PRO, CONJ, PUNCT, OTHER };

inline constexpr std::size_t category_count = 10;

inline std::string_view to_string(Category c) {
  switch (c) {
    case Category::N: return "N";
    case Category::V: return "V";
    case Category::ADJ: return "ADJ";
    case Category::ADV: return "ADV";
    case Category::PREP: return "PREP";
    case Category::DET: return "DET";
    case Category::PRO: return "PRO";
    case Category::CONJ: return "CONJ";
    case Category::PUNCT: return "PUNCT";
    case Category::OTHER: return "OTHER";
  }
  return "OTHER";
}

inline std::optional<Category> category_from(std::string_view name) {
  static const std::unordered_map<std::string_view, Category> map = {
      {"N", Category::N},       {"V", Category::V},       {"ADJ", Category::ADJ},
      {"ADV", Category::ADV},   {"PREP", Category::PREP}, {"DET", Category::DET},
      {"PRO", Category::PRO},   {"CONJ", Category::CONJ}, {"PUNCT", Category::PUNCT},
      {"OTHER", Category::OTHER}};
  const auto it = map.find(name);
  if (it == map.end()) return std::nullopt;
  return it->second;
}

// Only these categories carry gender/number features.
inline bool bears_features(Category c) {
  return c == Category::N || c == Category::ADJ || c == Category::DET || c == Category::PRO;
}

enum class Gender { none, masculine, feminine };
enum class Number { none, singular, plural };

struct PosTag {
  Category category = Category::OTHER;
  Gender gender = Gender::none;
  Number number = Number::none;

  bool operator==(const PosTag&) const = default;
};

// Parses "N", "N:m", "N:s", "N:m:s", ... Throws ParseError (no line info).
inline PosTag parse_tag(std::string_view text) {
  PosTag tag;
  const std::size_t colon = text.find(':');
  const std::string_view cat_name = text.substr(0, colon);
  const auto cat = category_from(cat_name);
  if (!cat) throw ParseError("unknown category '" + std::string(cat_name) + "'");
  tag.category = *cat;
  std::string_view rest = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  while (!rest.empty()) {
    const std::size_t next = rest.find(':');
    const std::string_view part = rest.substr(0, next);
    rest = next == std::string_view::npos ? std::string_view{} : rest.substr(next + 1);
    if (!bears_features(tag.category))
      throw ParseError("category '" + std::string(cat_name) + "' takes no gender/number");
    if (part == "m" || part == "f") {
      if (tag.gender != Gender::none) throw ParseError("duplicate gender in tag");
      tag.gender = part == "m" ? Gender::masculine : Gender::feminine;
    } else if (part == "s" || part == "p") {
      if (tag.number != Number::none) throw ParseError("duplicate number in tag");
      tag.number = part == "s" ? Number::singular : Number::plural;
    } else {
      throw ParseError("unknown tag feature '" + std::string(part) + "'");
    }
  }
  return tag;
}

inline std::string format_tag(const PosTag& tag) {
  std::string out(to_string(tag.category));
  if (tag.gender != Gender::none) out += tag.gender == Gender::masculine ? ":m" : ":f";
  if (tag.number != Number::none) out += tag.number == Number::singular ? ":s" : ":p";
  return out;
}

struct TaggedToken {
  Token token;
  PosTag tag;
  std::string lemma;  // lowercased citation form; lowercased surface if unknown

  bool operator==(const TaggedToken&) const = default;
};

struct LexiconReading {
  PosTag tag;
  std::string lemma;

  bool operator==(const LexiconReading&) const = default;
};

struct SuffixRule {
  std::string suffix;
  PosTag tag;

  bool operator==(const SuffixRule&) const = default;
};

// Surface form -> ordered readings (most frequent first; file order wins).
// Keys are lowercased. Immutable by convention once loading is done.
class Lexicon {
 public:
  void add(std::string_view surface, PosTag tag, std::string lemma) {
    entries_[detail::ascii_lower(surface)].push_back(
        LexiconReading{tag, detail::ascii_lower(lemma)});
  }

  const std::vector<LexiconReading>* lookup(const std::string& lowercased_surface) const {
    const auto it = entries_.find(lowercased_surface);
    return it == entries_.end() ? nullptr : &it->second;
  }

  bool has_entries() const { return !entries_.empty(); }
  std::size_t entry_count() const { return entries_.size(); }

  std::vector<SuffixRule> suffix_rules;
  PosTag default_tag{Category::N, Gender::none, Number::none};

 private:
  std::unordered_map<std::string, std::vector<LexiconReading>> entries_;
};

inline Lexicon parse_lexicon(std::string_view text) {
  Lexicon lex;
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
    if (line[first] == '@') {
      std::vector<std::string> parts;
      std::size_t p = first;
      while (p < line.size()) {
        while (p < line.size() && detail::is_space(line[p])) ++p;
        std::size_t q = p;
        while (q < line.size() && !detail::is_space(line[q])) ++q;
        if (q > p) parts.emplace_back(line.substr(p, q - p));
        p = q;
      }
      try {
        if (parts[0] == "@suffix") {
          if (parts.size() != 3) throw ParseError("@suffix takes a suffix and a tag");
          lex.suffix_rules.push_back(SuffixRule{parts[1], parse_tag(parts[2])});
        } else if (parts[0] == "@default") {
          if (parts.size() != 2) throw ParseError("@default takes a tag");
          lex.default_tag = parse_tag(parts[1]);
        } else {
          throw ParseError("unknown directive '" + parts[0] + "'");
        }
      } catch (const ParseError& e) {
        throw ParseError(e.what(), lineno);
      }
      continue;
    }
    // entry line: surface TAB tag TAB lemma
    line = line.substr(first);
    std::vector<std::string_view> fields;
    std::size_t p = 0;
    while (true) {
      const std::size_t tab = line.find('\t', p);
      fields.push_back(line.substr(p, tab == std::string_view::npos ? tab : tab - p));
      if (tab == std::string_view::npos) break;
      p = tab + 1;
    }
    if (fields.size() != 3 || fields[0].empty() || fields[2].empty())
      throw ParseError("malformed lexicon entry (want surface<TAB>tag<TAB>lemma)", lineno);
    PosTag tag;
    try {
      tag = parse_tag(fields[1]);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), lineno);
    }
    lex.add(fields[0], tag, std::string(fields[2]));
  }
  if (!lex.has_entries()) throw ParseError("empty lexicon");
  return lex;
}

inline Lexicon load_lexicon(const std::string& path) {
  try {
    return parse_lexicon(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

struct TransformationRule {
  enum class Trigger { prev_tag_is, next_tag_is, prev_word_is, next_word_is, surrounded_by_tags };

  Trigger trigger = Trigger::prev_tag_is;
  Category from = Category::N;
  Category to = Category::V;
  Category tag_arg = Category::OTHER;   // prev/next/surrounded (left)
  Category tag_arg2 = Category::OTHER;  // surrounded (right)
  std::string word_arg;                 // prev_word_is / next_word_is, lowercased

  bool operator==(const TransformationRule&) const = default;
};

inline std::vector<TransformationRule> parse_rules(std::string_view text) {
  std::vector<TransformationRule> rules;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? eol : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    std::vector<std::string> parts;
    std::size_t p = 0;
    while (p < line.size()) {
      while (p < line.size() && detail::is_space(line[p])) ++p;
      std::size_t q = p;
      while (q < line.size() && !detail::is_space(line[q])) ++q;
      if (q > p) parts.emplace_back(line.substr(p, q - p));
      p = q;
    }
    if (parts.empty() || parts[0][0] == '#') continue;
    try {
      TransformationRule rule;
      const std::size_t gt = parts[0].find('>');
      if (gt == std::string::npos) throw ParseError("rule must start with FROM>TO");
      const auto from = category_from(std::string_view(parts[0]).substr(0, gt));
      const auto to = category_from(std::string_view(parts[0]).substr(gt + 1));
      if (!from || !to) throw ParseError("unknown category in '" + parts[0] + "'");
      if (*from == *to) throw ParseError("rule rewrites a category to itself");
      rule.from = *from;
      rule.to = *to;
      if (parts.size() < 2) throw ParseError("missing trigger");
      const std::string& trig = parts[1];
      auto need_args = [&](std::size_t n) {
        if (parts.size() != 2 + n)
          throw ParseError("trigger '" + trig + "' takes " + std::to_string(n) + " argument(s)");
      };
      auto tag_arg = [&](const std::string& s) {
        const auto c = category_from(s);
        if (!c) throw ParseError("unknown category '" + s + "'");
        return *c;
      };
      if (trig == "prev_tag_is") {
        need_args(1);
        rule.trigger = TransformationRule::Trigger::prev_tag_is;
        rule.tag_arg = tag_arg(parts[2]);
      } else if (trig == "next_tag_is") {
        need_args(1);
        rule.trigger = TransformationRule::Trigger::next_tag_is;
        rule.tag_arg = tag_arg(parts[2]);
      } else if (trig == "prev_word_is") {
        need_args(1);
        rule.trigger = TransformationRule::Trigger::prev_word_is;
        rule.word_arg = detail::ascii_lower(parts[2]);
      } else if (trig == "next_word_is") {
        need_args(1);
        rule.trigger = TransformationRule::Trigger::next_word_is;
        rule.word_arg = detail::ascii_lower(parts[2]);
      } else if (trig == "surrounded_by_tags") {
        need_args(2);
        rule.trigger = TransformationRule::Trigger::surrounded_by_tags;
        rule.tag_arg = tag_arg(parts[2]);
        rule.tag_arg2 = tag_arg(parts[3]);
      } else {
        throw ParseError("unknown trigger '" + trig + "'");
      }
      rules.push_back(std::move(rule));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), lineno);
    }
  }
  return rules;
}

inline std::vector<TransformationRule> load_rules(const std::string& path) {
  try {
    return parse_rules(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

namespace detail {

inline bool trigger_matches(const TransformationRule& rule, std::span<const Category> tags,
                            std::span<const Token> tokens, std::size_t i) {
  using Trigger = TransformationRule::Trigger;
  switch (rule.trigger) {
    case Trigger::prev_tag_is:
      return i > 0 && tags[i - 1] == rule.tag_arg;
    case Trigger::next_tag_is:
      return i + 1 < tags.size() && tags[i + 1] == rule.tag_arg;
    case Trigger::prev_word_is:
      return i > 0 && ascii_lower(tokens[i - 1].surface) == rule.word_arg;
    case Trigger::next_word_is:
      return i + 1 < tokens.size() && ascii_lower(tokens[i + 1].surface) == rule.word_arg;
    case Trigger::surrounded_by_tags:
      return i > 0 && i + 1 < tags.size() && tags[i - 1] == rule.tag_arg &&
             tags[i + 1] == rule.tag_arg2;
  }
  return false;
}

// Category rewrite. When the lexicon has a reading of the new category for
// this surface, adopt its full tag and lemma; otherwise keep compatible
// features and drop the rest.
inline void rewrite(TaggedToken& tt, Category to, const Lexicon& lexicon) {
  if (const auto* readings = lexicon.lookup(ascii_lower(tt.token.surface))) {
    for (const LexiconReading& r : *readings) {
      if (r.tag.category == to) {
        tt.tag = r.tag;
        tt.lemma = r.lemma;
        return;
      }
    }
  }
  tt.tag.category = to;
  if (!bears_features(to)) {
    tt.tag.gender = Gender::none;
    tt.tag.number = Number::none;
  }
}

}  // namespace detail

// Tags one sentence. Baseline: punctuation -> PUNCT, numbers -> OTHER, words
// take their first lexicon reading, else the first matching suffix rule, else
// the lexicon's default tag. Then each rule runs one full pass in order.
inline std::vector<TaggedToken> tag(std::span<const Token> tokens, const Lexicon& lexicon,
                                    std::span<const TransformationRule> rules = {}) {
  std::vector<TaggedToken> out;
  out.reserve(tokens.size());
  for (const Token& t : tokens) {
    TaggedToken tt{t, PosTag{}, {}};
    switch (t.kind) {
      case TokenKind::punctuation:
        tt.tag = PosTag{Category::PUNCT, Gender::none, Number::none};
        tt.lemma = t.surface;
        break;
      case TokenKind::number:
        tt.tag = PosTag{Category::OTHER, Gender::none, Number::none};
        tt.lemma = t.surface;
        break;
      case TokenKind::word: {
        const std::string key = detail::ascii_lower(t.surface);
        if (const auto* readings = lexicon.lookup(key)) {
          tt.tag = readings->front().tag;
          tt.lemma = readings->front().lemma;
        } else {
          bool guessed = false;
          for (const SuffixRule& sr : lexicon.suffix_rules) {
            if (key.size() >= sr.suffix.size() && key.ends_with(sr.suffix)) {
              tt.tag = sr.tag;
              guessed = true;
              break;
            }
          }
          if (!guessed) tt.tag = lexicon.default_tag;
          tt.lemma = key;
        }
        break;
      }
    }
    out.push_back(std::move(tt));
  }

  std::vector<Category> snapshot(out.size());
  for (const TransformationRule& rule : rules) {
    for (std::size_t i = 0; i < out.size(); ++i) snapshot[i] = out[i].tag.category;
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (snapshot[i] != rule.from) continue;
      if (detail::trigger_matches(rule, snapshot, tokens, i)) detail::rewrite(out[i], rule.to, lexicon);
    }
  }
  return out;
}

// --- pre-tagged interop format ---

inline std::string format_tagged(std::span<const TaggedToken> sentence) {
  std::string out;
  for (const TaggedToken& tt : sentence) {
    out += tt.token.surface;
    out += '\t';
    out += format_tag(tt.tag);
    out += '\t';
    out += tt.lemma;
    out += '\n';
  }
  return out;
}

inline std::string format_tagged_document(const std::vector<std::vector<TaggedToken>>& sentences) {
  std::string out;
  bool first = true;
  for (const auto& s : sentences) {
    if (!first) out += '\n';
    first = false;
    out += format_tagged(s);
  }
  return out;
}

// Parses the pre-tagged format. Spans are synthesized over an implied text
// (tokens joined by single spaces, sentences by single newlines) so that
// downstream consumers still get consistent offsets; reconstruct_text()
// yields that implied text.
inline std::vector<std::vector<TaggedToken>> parse_tagged(std::string_view text) {
  std::vector<std::vector<TaggedToken>> sentences;
  std::vector<TaggedToken> current;
  std::size_t offset = 0;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  bool at_document_start = true;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? eol : eol - pos);
    const bool last = eol == std::string_view::npos;
    pos = last ? text.size() + 1 : eol + 1;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) {
      if (!current.empty()) sentences.push_back(std::move(current));
      current.clear();
      continue;
    }
    const std::size_t t1 = line.find('\t');
    const std::size_t t2 = t1 == std::string_view::npos ? t1 : line.find('\t', t1 + 1);
    if (t1 == std::string_view::npos || t2 == std::string_view::npos ||
        line.find('\t', t2 + 1) != std::string_view::npos)
      throw ParseError("malformed tagged line (want surface<TAB>tag<TAB>lemma)", lineno);
    const std::string_view surface = line.substr(0, t1);
    const std::string_view tagspec = line.substr(t1 + 1, t2 - t1 - 1);
    const std::string_view lemma = line.substr(t2 + 1);
    if (surface.empty() || lemma.empty()) throw ParseError("empty surface or lemma", lineno);
    PosTag tag;
    try {
      tag = parse_tag(tagspec);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), lineno);
    }
    TokenKind kind = TokenKind::word;
    if (tag.category == Category::PUNCT) kind = TokenKind::punctuation;
    else if (detail::is_digit(surface[0])) kind = TokenKind::number;
    std::string gap;
    if (!at_document_start) gap = current.empty() ? "\n" : " ";
    offset += gap.size();
    Token token{std::string(surface), Span{offset, offset + surface.size()}, std::move(gap), kind};
    offset += surface.size();
    at_document_start = false;
    current.push_back(TaggedToken{std::move(token), tag, detail::ascii_lower(lemma)});
  }
  if (!current.empty()) sentences.push_back(std::move(current));
  return sentences;
}

// The implied text behind parse_tagged() spans.
inline std::string reconstruct_text(const std::vector<std::vector<TaggedToken>>& sentences) {
  std::string out;
  for (const auto& s : sentences)
    for (const TaggedToken& tt : s) {
      out += tt.token.preceding_gap;
      out += tt.token.surface;
    }
  return out;
}

}  // namespace stk
