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

// Sentence segmentation and tokenization with exact byte spans.
//
// Nothing here rewrites the input: every token records the slice of the
// original document it covers plus the separators preceding it, so a document
// can always be reassembled byte-for-byte from its tokens. Offsets are byte
// offsets into the text as given (UTF-8 expected, taken as-is, never
// normalized). Bytes with the high bit set count as letters, which keeps
// accented words whole without pulling in a Unicode library.

#pragma once

#include <array>
#include <cstddef>
#include <fstream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "stk/errors.hpp"

namespace stk {

// Half-open byte range [start, end) into a document.
struct Span {
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t length() const { return end - start; }
  bool operator==(const Span&) const = default;
};

enum class TokenKind { word, number, punctuation };

inline std::string_view to_string(TokenKind k) {
  switch (k) {
    case TokenKind::word: return "word";
    case TokenKind::number: return "number";
    case TokenKind::punctuation: return "punctuation";
  }
  return "word";
}

struct Token {
  std::string surface;        // exact slice text[span.start, span.end)
  Span span;
  std::string preceding_gap;  // separators between the previous token and this one
  TokenKind kind = TokenKind::word;

  bool operator==(const Token&) const = default;
};

struct Sentence {
  Span span;                  // trimmed of surrounding whitespace
  std::vector<Token> tokens;

  bool operator==(const Sentence&) const = default;
};

// A whole document plus the trailing separators no token accounts for.
struct TokenizedDocument {
  std::vector<Sentence> sentences;
  std::string trailing_gap;

  bool operator==(const TokenizedDocument&) const = default;
};

namespace detail {

inline bool is_space(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

inline bool is_digit(unsigned char c) { return c >= '0' && c <= '9'; }

inline bool is_ascii_upper(unsigned char c) { return c >= 'A' && c <= 'Z'; }

inline bool is_letter(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c >= 0x80;
}

inline char ascii_lower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

inline std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = ascii_lower(c);
  return out;
}

// Word containing the '.' at `dot`, scanned back to the previous separator.
inline std::string_view word_ending_at(std::string_view text, std::size_t dot) {
  std::size_t w = dot;
  while (w > 0 && !is_space(text[w - 1])) --w;
  return text.substr(w, dot + 1 - w);
}

}  // namespace detail

// Abbreviations whose trailing period never closes a sentence.
inline const std::vector<std::string>& default_abbreviations() {
  static const std::vector<std::string> list = {
      "M.", "MM.", "Mme.", "Mlle.", "Dr.", "St.", "etc.", "cf.", "e.g.", "i.e.", "p.", "vol.",
  };
  return list;
}

// Splits `text` into sentence spans. A sentence closes at '.', '!' or '?'
// followed by whitespace and an ASCII capital (or end of text), or at a
// newline; periods ending a listed abbreviation do not close. Spans start at
// the first non-whitespace byte and include the terminator.
inline std::vector<Span> split_sentences(std::string_view text,
                                         std::span<const std::string> abbreviations) {
  std::vector<Span> out;
  const std::size_t n = text.size();
  std::size_t i = 0;
  while (true) {
    while (i < n && detail::is_space(text[i])) ++i;
    if (i >= n) break;
    const std::size_t start = i;
    std::size_t end = 0;
    std::size_t resume = n;
    bool closed = false;
    for (std::size_t j = start; j < n && !closed; ++j) {
      const char c = text[j];
      if (c == '\n') {
        std::size_t k = j;
        while (k > start && detail::is_space(text[k - 1])) --k;
        end = k;
        resume = j + 1;
        closed = true;
        break;
      }
      if (c != '.' && c != '!' && c != '?') continue;
      if (c == '.') {
        const std::string_view word = detail::word_ending_at(text, j);
        bool is_abbrev = false;
        for (const std::string& a : abbreviations) {
          if (word == a) { is_abbrev = true; break; }
        }
        if (is_abbrev) continue;
      }
      std::size_t k = j + 1;
      while (k < n && detail::is_space(text[k])) ++k;
      if (k >= n ? true : (k > j + 1 && detail::is_ascii_upper(text[k]))) {
        end = j + 1;
        resume = j + 1;
        closed = true;
      }
    }
    if (!closed) {
      std::size_t k = n;
      while (k > start && detail::is_space(text[k - 1])) --k;
      end = k;
      resume = n;
    }
    out.push_back(Span{start, end});
    i = resume > end ? resume : end;
  }
  return out;
}

inline std::vector<Span> split_sentences(std::string_view text) {
  return split_sentences(text, default_abbreviations());
}

namespace detail {

// Elided clitics: a word-initial "l'" etc. becomes its own token.
inline const std::array<std::string_view, 9>& elision_prefixes() {
  static const std::array<std::string_view, 9> p = {"l'", "d'", "j'", "n'", "s'",
                                                    "c'", "qu'", "m'", "t'"};
  return p;
}

}  // namespace detail

// Tokenizes one sentence span. Words keep internal hyphens and apostrophes
// ("porte-avions", "aujourd'hui"); elision prefixes split off ("l'arbre" ->
// "l'", "arbre"); digit runs (with inner , or . between digits) are numbers;
// every other non-space byte is a one-byte punctuation token.
inline std::vector<Token> tokenize(std::string_view text, Span sentence) {
  std::vector<Token> out;
  std::size_t pos = sentence.start;
  std::size_t gap_anchor = sentence.start;
  const std::size_t end = sentence.end;

  auto emit = [&](std::size_t from, std::size_t to, TokenKind kind) {
    out.push_back(Token{std::string(text.substr(from, to - from)),
                        Span{from, to},
                        std::string(text.substr(gap_anchor, from - gap_anchor)),
                        kind});
    gap_anchor = to;
  };

  while (pos < end) {
    const unsigned char c = text[pos];
    if (detail::is_space(c)) {
      ++pos;
      continue;
    }
    const std::size_t tstart = pos;
    if (detail::is_digit(c)) {
      ++pos;
      while (pos < end && detail::is_digit(text[pos])) ++pos;
      while (pos + 1 < end && (text[pos] == '.' || text[pos] == ',') &&
             detail::is_digit(text[pos + 1])) {
        ++pos;
        while (pos < end && detail::is_digit(text[pos])) ++pos;
      }
      emit(tstart, pos, TokenKind::number);
    } else if (detail::is_letter(c)) {
      ++pos;
      while (pos < end && detail::is_letter(text[pos])) ++pos;
      while (pos + 1 < end && (text[pos] == '-' || text[pos] == '\'') &&
             detail::is_letter(text[pos + 1])) {
        ++pos;
        while (pos < end && detail::is_letter(text[pos])) ++pos;
      }
      std::size_t ws = tstart;
      bool split = true;
      while (split) {
        split = false;
        for (std::size_t a = ws; a < pos; ++a) {
          if (text[a] != '\'') continue;
          const std::string prefix = detail::ascii_lower(text.substr(ws, a + 1 - ws));
          bool elides = false;
          for (std::string_view e : detail::elision_prefixes()) {
            if (prefix == e) { elides = true; break; }
          }
          if (elides && a + 1 < pos) {
            emit(ws, a + 1, TokenKind::word);
            ws = a + 1;
            split = true;
          }
          break;  // only the first apostrophe of the remainder can elide
        }
      }
      emit(ws, pos, TokenKind::word);
    } else {
      ++pos;
      emit(tstart, pos, TokenKind::punctuation);
    }
  }
  return out;
}

// Tokenizes a whole document. The first token of each sentence carries the
// gap back to the previous token (or document start), so reassemble() is a
// byte-for-byte inverse.
inline TokenizedDocument tokenize_document(std::string_view text,
                                           std::span<const std::string> abbreviations) {
  TokenizedDocument doc;
  std::size_t prev_end = 0;
  for (const Span s : split_sentences(text, abbreviations)) {
    Sentence sent{s, tokenize(text, s)};
    if (!sent.tokens.empty()) {
      Token& first = sent.tokens.front();
      first.preceding_gap = std::string(text.substr(prev_end, first.span.start - prev_end));
      prev_end = sent.tokens.back().span.end;
    }
    doc.sentences.push_back(std::move(sent));
  }
  doc.trailing_gap = std::string(text.substr(prev_end));
  return doc;
}

inline TokenizedDocument tokenize_document(std::string_view text) {
  return tokenize_document(text, default_abbreviations());
}

inline std::string reassemble(const TokenizedDocument& doc) {
  std::string out;
  for (const Sentence& s : doc.sentences) {
    for (const Token& t : s.tokens) {
      out += t.preceding_gap;
      out += t.surface;
    }
  }
  out += doc.trailing_gap;
  return out;
}

// Reads a whole file as bytes.
inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error("error reading file: " + path);
  return std::move(ss).str();
}

}  // namespace stk
