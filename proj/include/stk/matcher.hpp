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

// Aligns a clue's SSP against the chunked sentence and binds roles.
//
// A candidate alignment maps the SSP elements, in order, onto units with
// strictly increasing indices. Its first bound unit is the start unit. Units
// lying between two bound units must belong to the skip set; optional
// elements may stay unbound; the lexical-marker element must be bound to a
// unit whose marker lemma (head token for GN/GV units) is in the clue's
// lexeme set, compared case-insensitively. Element/unit compatibility:
//
//   GN <-> GN unit          GV <-> GV unit
//   V  <-> GV unit, or TOK unit whose token is a verb (marker tests on V use
//          the GV head)
//   Adj/Adv/prep/det/pro/conj <-> TOK unit of that token category
//   tok <-> any TOK unit
//
// Among candidates starting at the same unit the winner is chosen by, in
// order: most optional elements bound; smallest last unit; lexicographically
// smallest element->unit vector (unbound counts as +infinity). Scanning is
// leftmost; by default the scan resumes after a match's last unit, so one
// clue's matches never overlap.

#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stk/catalog.hpp"
#include "stk/chunker.hpp"

namespace stk {

struct Match {
  std::string clue_name;
  std::size_t first_unit = 0;
  std::size_t last_unit = 0;                 // inclusive
  std::map<SlotRef, std::size_t> bindings;   // bound SSP elements -> unit index
  std::string marker_surface;
  std::optional<Span> target_span;
  std::optional<Span> source_span;

  bool operator==(const Match&) const = default;
};

enum class MatchPolicy {
  leftmost_nonoverlapping,  // canonical: resume after each match
  all_starts,               // best candidate at every start unit, overlaps allowed
};

inline bool skip_allows(const SkipSet& skip, const Unit& unit) {
  switch (unit.kind) {
    case UnitKind::GN: return skip.gn;
    case UnitKind::GV: return skip.gv;
    case UnitKind::TOK: return skip.token_categories.contains(unit.head().tag.category);
  }
  return false;
}

inline bool element_accepts(ElementCategory ec, const Unit& unit) {
  switch (ec) {
    case ElementCategory::GN: return unit.kind == UnitKind::GN;
    case ElementCategory::GV: return unit.kind == UnitKind::GV;
    case ElementCategory::V:
      return unit.kind == UnitKind::GV ||
             (unit.kind == UnitKind::TOK && unit.head().tag.category == Category::V);
    case ElementCategory::Adj:
      return unit.kind == UnitKind::TOK && unit.head().tag.category == Category::ADJ;
    case ElementCategory::Adv:
      return unit.kind == UnitKind::TOK && unit.head().tag.category == Category::ADV;
    case ElementCategory::prep:
      return unit.kind == UnitKind::TOK && unit.head().tag.category == Category::PREP;
    case ElementCategory::det:
      return unit.kind == UnitKind::TOK && unit.head().tag.category == Category::DET;
    case ElementCategory::pro:
      return unit.kind == UnitKind::TOK && unit.head().tag.category == Category::PRO;
    case ElementCategory::conj:
      return unit.kind == UnitKind::TOK && unit.head().tag.category == Category::CONJ;
    case ElementCategory::tok: return unit.kind == UnitKind::TOK;
  }
  return false;
}

namespace detail {

struct MatchCandidate {
  std::vector<std::optional<std::size_t>> binding;  // per SSP element
  std::size_t last = 0;
  int optionals_bound = 0;
};

inline bool candidate_better(const MatchCandidate& a, const MatchCandidate& b) {
  if (a.optionals_bound != b.optionals_bound) return a.optionals_bound > b.optionals_bound;
  if (a.last != b.last) return a.last < b.last;
  constexpr std::size_t inf = std::numeric_limits<std::size_t>::max();
  for (std::size_t i = 0; i < a.binding.size(); ++i) {
    const std::size_t av = a.binding[i] ? *a.binding[i] : inf;
    const std::size_t bv = b.binding[i] ? *b.binding[i] : inf;
    if (av != bv) return av < bv;
  }
  return false;
}

}  // namespace detail

inline std::vector<Match> match_clue(const ClueDefinition& clue, std::span<const Unit> units,
                                     const SkipSet& skip,
                                     MatchPolicy policy = MatchPolicy::leftmost_nonoverlapping) {
  std::vector<Match> out;
  if (clue.ssp.empty() || units.empty()) return out;
  const auto lm_pos_opt = find_element(clue.ssp, clue.lm.slot);
  if (!lm_pos_opt) throw Error("clue '" + clue.name + "': lm slot is not a labeled ssp element");
  const std::size_t lm_pos = *lm_pos_opt;

  std::set<std::string> lexemes;
  for (const std::string& lex : clue.lm.lexemes) lexemes.insert(detail::ascii_lower(lex));
  auto marker_ok = [&](const Unit& u) {
    return lexemes.contains(detail::ascii_lower(u.head().lemma));
  };

  const std::size_t n_elements = clue.ssp.size();
  std::vector<std::optional<std::size_t>> binding(n_elements);
  std::optional<detail::MatchCandidate> best;
  std::size_t start = 0;

  auto finalize = [&]() {
    if (!binding[lm_pos]) return;  // a match always carries its marker
    detail::MatchCandidate cand;
    cand.binding = binding;
    for (std::size_t i = 0; i < n_elements; ++i) {
      if (!binding[i]) continue;
      cand.last = std::max(cand.last, *binding[i]);
      if (clue.ssp[i].optional) ++cand.optionals_bound;
    }
    if (!best || detail::candidate_better(cand, *best)) best = std::move(cand);
  };

  // Depth-first over (element, unit) choices; explores exactly the candidate
  // set described above.
  auto walk = [&](auto&& self, std::size_t e, std::optional<std::size_t> prev) -> void {
    if (e == n_elements) {
      finalize();
      return;
    }
    const PatternElement& el = clue.ssp[e];
    if (el.optional) {
      binding[e] = std::nullopt;
      self(self, e + 1, prev);
    }
    if (!prev) {
      const Unit& u = units[start];
      if (element_accepts(el.category, u) && (e != lm_pos || marker_ok(u))) {
        binding[e] = start;
        self(self, e + 1, start);
        binding[e] = std::nullopt;
      }
    } else {
      for (std::size_t u = *prev + 1; u < units.size(); ++u) {
        if (element_accepts(el.category, units[u]) && (e != lm_pos || marker_ok(units[u]))) {
          binding[e] = u;
          self(self, e + 1, u);
          binding[e] = std::nullopt;
        }
        if (!skip_allows(skip, units[u])) break;
      }
    }
  };

  auto to_match = [&](const detail::MatchCandidate& cand) {
    Match m;
    m.clue_name = clue.name;
    m.first_unit = start;
    m.last_unit = cand.last;
    for (std::size_t i = 0; i < n_elements; ++i)
      if (cand.binding[i])
        m.bindings[SlotRef{clue.ssp[i].category, clue.ssp[i].index}] = *cand.binding[i];
    m.marker_surface = units[*cand.binding[lm_pos]].head().token.surface;
    auto role_span = [&](const std::optional<SlotRef>& slot) -> std::optional<Span> {
      if (!slot) return std::nullopt;
      const auto pos = find_element(clue.ssp, *slot);
      if (!pos || !cand.binding[*pos]) return std::nullopt;
      return units[*cand.binding[*pos]].span();
    };
    m.target_span = role_span(clue.target_slot);
    m.source_span = role_span(clue.source_slot);
    return m;
  };

  std::size_t s = 0;
  while (s < units.size()) {
    start = s;
    best.reset();
    std::fill(binding.begin(), binding.end(), std::nullopt);
    walk(walk, 0, std::nullopt);
    if (best) {
      out.push_back(to_match(*best));
      s = policy == MatchPolicy::leftmost_nonoverlapping ? best->last + 1 : s + 1;
    } else {
      ++s;
    }
  }
  return out;
}

// Runs every clue of the catalog over the sentence, with an explicit skip
// set. Matches from different clues may overlap; the result is sorted by
// (first unit, clue order).
inline std::vector<Match> match_all(const Catalog& catalog, std::span<const Unit> units,
                                    const SkipSet& skip,
                                    MatchPolicy policy = MatchPolicy::leftmost_nonoverlapping) {
  std::vector<std::pair<std::size_t, Match>> keyed;
  for (std::size_t ci = 0; ci < catalog.clues.size(); ++ci)
    for (Match& m : match_clue(catalog.clues[ci], units, skip, policy))
      keyed.emplace_back(ci, std::move(m));
  std::stable_sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    if (a.second.first_unit != b.second.first_unit)
      return a.second.first_unit < b.second.first_unit;
    return a.first < b.first;
  });
  std::vector<Match> out;
  out.reserve(keyed.size());
  for (auto& [ci, m] : keyed) out.push_back(std::move(m));
  return out;
}

inline std::vector<Match> match_all(const Catalog& catalog, std::span<const Unit> units,
                                    MatchPolicy policy = MatchPolicy::leftmost_nonoverlapping) {
  return match_all(catalog, units, catalog.skip_categories, policy);
}

}  // namespace stk
