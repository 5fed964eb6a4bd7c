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

// Shallow chunking of a tagged sentence into flat units: nominal groups (GN),
// verbal groups (GV) and free tokens (TOK). Units partition the sentence in
// order; there is no recursion and no attachment.
//
//   GN := DET? ADJ* N (ADJ | N)*      head = first N
//   GV := ADV* V V*                   head = first V
//   TOK := any other single token     head = that token
//
// An adjective merges into a GN only when contiguous with one; predicative
// adjectives stay free so patterns can bind them directly.

#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "stk/tagger.hpp"

namespace stk {

enum class UnitKind { GN, GV, TOK };

inline std::string_view to_string(UnitKind k) {
  switch (k) {
    case UnitKind::GN: return "GN";
    case UnitKind::GV: return "GV";
    case UnitKind::TOK: return "TOK";
  }
  return "TOK";
}

struct Unit {
  UnitKind kind = UnitKind::TOK;
  std::vector<TaggedToken> tokens;
  std::size_t head_index = 0;

  const TaggedToken& head() const { return tokens[head_index]; }
  Span span() const { return Span{tokens.front().token.span.start, tokens.back().token.span.end}; }

  bool operator==(const Unit&) const = default;
};

inline std::vector<Unit> chunk(std::span<const TaggedToken> sentence) {
  std::vector<Unit> out;
  const std::size_t n = sentence.size();
  auto cat = [&](std::size_t i) { return sentence[i].tag.category; };
  auto emit = [&](UnitKind kind, std::size_t from, std::size_t to, std::size_t head) {
    Unit u{kind, {sentence.begin() + from, sentence.begin() + to}, head - from};
    out.push_back(std::move(u));
  };

  std::size_t i = 0;
  while (i < n) {
    const Category c = cat(i);
    if (c == Category::DET || c == Category::ADJ || c == Category::N) {
      std::size_t j = i;
      if (cat(j) == Category::DET) ++j;
      while (j < n && cat(j) == Category::ADJ) ++j;
      if (j < n && cat(j) == Category::N) {
        const std::size_t head = j;
        ++j;
        while (j < n && (cat(j) == Category::ADJ || cat(j) == Category::N)) ++j;
        emit(UnitKind::GN, i, j, head);
        i = j;
        continue;
      }
    }
    if (c == Category::ADV || c == Category::V) {
      std::size_t j = i;
      while (j < n && cat(j) == Category::ADV) ++j;
      if (j < n && cat(j) == Category::V) {
        const std::size_t head = j;
        ++j;
        while (j < n && cat(j) == Category::V) ++j;
        emit(UnitKind::GV, i, j, head);
        i = j;
        continue;
      }
    }
    emit(UnitKind::TOK, i, i + 1, i);
    ++i;
  }
  return out;
}

}  // namespace stk
