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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "stk/catalog.hpp"
#include "support/generators.hpp"

using namespace stk;

namespace {

const std::string kFixtureDir = STK_FIXTURES;

ClueDefinition minimal_clue() {
  ClueDefinition clue;
  clue.name = "T.1";
  clue.ssp = {PatternElement{ElementCategory::GN, 1, false, true},
              PatternElement{ElementCategory::Adj, 0, false, true}};
  clue.lm.slot = SlotRef{ElementCategory::Adj, 0};
  clue.lm.lexemes = {"pareil"};
  return clue;
}

}  // namespace

TEST_CASE("the flagship catalog fixture parses field by field") {
  std::vector<Diagnostic> warnings;
  const Catalog catalog = load_catalog(kFixtureDir + "/b222.catalog", &warnings);
  REQUIRE(catalog.clues.size() == 1);
  const ClueDefinition& clue = catalog.clues[0];
  CHECK(clue.name == "B.2.2.2");
  CHECK(clue.type == ClueType::metaphor_analogy);
  REQUIRE(clue.ssp.size() == 6);
  CHECK(clue.ssp[0] == PatternElement{ElementCategory::GN, 0, false, true});
  CHECK(clue.ssp[1] == PatternElement{ElementCategory::GN, 1, false, true});
  CHECK(clue.ssp[2] == PatternElement{ElementCategory::V, 1, false, true});
  CHECK(clue.ssp[3] == PatternElement{ElementCategory::Adj, 0, false, true});
  CHECK(clue.ssp[4] == PatternElement{ElementCategory::prep, 0, true, false});
  CHECK(clue.ssp[5] == PatternElement{ElementCategory::GN, 2, false, true});
  CHECK(clue.lm.slot == SlotRef{ElementCategory::Adj, 0});
  CHECK(clue.lm.lexemes == std::set<std::string>{"pareil"});
  CHECK(clue.target_slot == SlotRef{ElementCategory::GN, 1});
  CHECK(clue.source_slot == SlotRef{ElementCategory::GN, 2});
  REQUIRE(clue.relevance.has_value());
  CHECK(*clue.relevance == RelevanceRecord{28, 3, 2, 12, 15});
  // the recorded counts disagree with their own total: kept, but flagged
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].severity == Severity::warning);
  CHECK(warnings[0].clue_name == "B.2.2.2");
  const auto prob = nonliteral_probability(clue);
  REQUIRE(prob.has_value());
  CHECK(*prob == Ratio{15, 28});
  CHECK(prob->render() == "0.5357");
}

TEST_CASE("empty text parses to the empty catalog") {
  const Catalog catalog = parse_catalog("");
  CHECK(catalog.clues.empty());
  CHECK(catalog.skip_categories == SkipSet{});
  CHECK(serialize_catalog(catalog) == "");
}

TEST_CASE("slot references must name labeled ssp elements") {
  const std::string base =
      "clue X\n  type metaphor\n  ssp GN_1 Adj_0\n  lm Adj_0 = tel\n";
  CHECK_THROWS_WITH_AS(parse_catalog(base + "  target GN_9\n"),
                       "error: clue 'X': unknown slot GN_9 in target", ParseError);
  CHECK_THROWS_AS(parse_catalog(base + "  source GV_0\n"), ParseError);
  // [prep] is unlabeled: not addressable
  CHECK_THROWS_AS(
      parse_catalog("clue X\n  type metaphor\n  ssp GN_1 [prep]\n  lm prep_0 = sur\n"),
      ParseError);
}

TEST_CASE("syntax errors carry line numbers") {
  try {
    parse_catalog("clue X\n  type metaphor\n  ssp GN_1 WAT_2\n  lm GN_1 = a\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse_catalog("clue X\n  typ metaphor\n"), ParseError);     // unknown key
  CHECK_THROWS_AS(parse_catalog("clue X\n  type bogus\n"), ParseError);       // bad type
  CHECK_THROWS_AS(parse_catalog("clue X\n  type metaphor\n  type metaphor\n"), ParseError);
  CHECK_THROWS_AS(parse_catalog("clue X Y\n"), ParseError);                   // name not one token
  CHECK_THROWS_AS(parse_catalog("type metaphor\n"), ParseError);              // outside a block
  CHECK_THROWS_AS(parse_catalog("clue X\n  type metaphor\n  ssp GN_1\n"), ParseError);  // no lm
  CHECK_THROWS_AS(parse_catalog("clue X\n  type metaphor\n  ssp GN_1\n  lm GN_1 pareil\n"),
                  ParseError);  // missing '='
  CHECK_THROWS_AS(
      parse_catalog("clue X\n  type metaphor\n  ssp GN_1\n  lm GN_1 = a\n  relevance 1 2 3\n"),
      ParseError);  // five counts required
}

TEST_CASE("duplicate clue names are rejected") {
  const std::string one = "clue X\n  type metaphor\n  ssp GN_1\n  lm GN_1 = a\n";
  CHECK_THROWS_AS(parse_catalog(one + "\n" + one), ParseError);
}

TEST_CASE("skip directive must come first and parse known items") {
  const Catalog catalog =
      parse_catalog("skip GN ADV PREP PRO PUNCT\nclue X\n  type metaphor\n  ssp GN_1\n  lm GN_1 = a\n");
  CHECK(catalog.skip_categories.gn);
  CHECK_FALSE(catalog.skip_categories.gv);
  CHECK(catalog.skip_categories.token_categories ==
        std::set<Category>{Category::ADV, Category::PREP, Category::PRO, Category::PUNCT});
  CHECK_THROWS_AS(parse_catalog("clue X\n  type metaphor\n  ssp GN_1\n  lm GN_1 = a\nskip GN\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_catalog("skip WAT\n"), ParseError);
  CHECK_THROWS_AS(parse_catalog("skip GN\nskip GV\n"), ParseError);
}

TEST_CASE("validator flags duplicate ssp elements") {
  ClueDefinition clue = minimal_clue();
  clue.ssp.push_back(PatternElement{ElementCategory::GN, 1, false, true});
  const auto diags = validate_clue(clue);
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].severity == Severity::error);
  CHECK(diags[0].message == "duplicate element GN_1 in ssp");
}

TEST_CASE("validator checks relevance arithmetic") {
  ClueDefinition clue = minimal_clue();
  clue.relevance = RelevanceRecord{15, 0, 0, 0, 16};  // total exceeds occurrences
  auto diags = validate_clue(clue);
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].severity == Severity::error);

  // a sum mismatch is not an invariant violation: the clue validates clean
  // and the mismatch surfaces as a catalog warning instead
  clue.relevance = RelevanceRecord{28, 3, 2, 12, 15};
  CHECK(validate_clue(clue).empty());
  Catalog catalog;
  catalog.clues = {clue};
  const auto warnings = catalog_warnings(catalog);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].severity == Severity::warning);
  CHECK(warnings[0].clue_name == clue.name);

  clue.relevance = RelevanceRecord{28, 3, 2, 12, 17};
  CHECK(validate_clue(clue).empty());
  catalog.clues = {clue};
  CHECK(catalog_warnings(catalog).empty());

  clue.relevance = RelevanceRecord{28, -1, 2, 12, 17};
  CHECK(has_errors(validate_clue(clue)));
}

TEST_CASE("the flagship fixture clue validates with no diagnostics") {
  const Catalog catalog = load_catalog(kFixtureDir + "/b222.catalog");
  CHECK(validate_clue(catalog.clues[0]).empty());
}

TEST_CASE("validator covers the remaining clue invariants") {
  ClueDefinition clue = minimal_clue();
  CHECK(validate_clue(clue).empty());

  ClueDefinition no_name = clue;
  no_name.name.clear();
  CHECK(has_errors(validate_clue(no_name)));

  ClueDefinition empty_ssp = clue;
  empty_ssp.ssp.clear();
  CHECK(has_errors(validate_clue(empty_ssp)));

  ClueDefinition no_lexeme = clue;
  no_lexeme.lm.lexemes.clear();
  CHECK(has_errors(validate_clue(no_lexeme)));

  ClueDefinition upper = clue;
  upper.lm.lexemes = {"Pareil"};
  CHECK(has_errors(validate_clue(upper)));

  ClueDefinition same_roles = clue;
  same_roles.target_slot = SlotRef{ElementCategory::GN, 1};
  same_roles.source_slot = SlotRef{ElementCategory::GN, 1};
  CHECK(has_errors(validate_clue(same_roles)));
}

TEST_CASE("serialization is canonical and fixed-order") {
  std::vector<Diagnostic> warnings;
  const Catalog catalog = load_catalog(kFixtureDir + "/b222.catalog", &warnings);
  CHECK(serialize_catalog(catalog) ==
        "clue B.2.2.2\n"
        "  type metaphor-analogy\n"
        "  comment adjectival comparison with the object before the verb\n"
        "  ssp GN_0 GN_1 V_1 Adj_0 [prep] GN_2\n"
        "  lm Adj_0 = pareil\n"
        "  target GN_1\n"
        "  source GN_2\n"
        "  relevance 28 3 2 12 15\n");
}

TEST_CASE("two clues serialize in input order with a blank line between") {
  const std::string text =
      "clue A\n  type metaphor\n  ssp GN_1\n  lm GN_1 = a\n"
      "clue B\n  type analogy\n  ssp GV_1\n  lm GV_1 = b\n";
  const Catalog catalog = parse_catalog(text);
  REQUIRE(catalog.clues.size() == 2);
  CHECK(catalog.clues[0].name == "A");
  CHECK(catalog.clues[1].name == "B");
  CHECK(serialize_catalog(catalog) ==
        "clue A\n  type metaphor\n  ssp GN_1\n  lm GN_1 = a\n"
        "\n"
        "clue B\n  type analogy\n  ssp GV_1\n  lm GV_1 = b\n");
}

TEST_CASE("multi-lexeme markers and non-default skip sets round-trip") {
  const std::string text =
      "skip GV ADV\n\nclue C\n  type context\n  ssp tok_1 [Adv_2]\n  lm tok_1 = tel | pareil\n";
  const Catalog catalog = parse_catalog(text);
  CHECK(catalog.clues[0].lm.lexemes == std::set<std::string>{"pareil", "tel"});
  const std::string canon = serialize_catalog(catalog);
  CHECK(canon ==
        "skip GV ADV\n\nclue C\n  type context\n  ssp tok_1 [Adv_2]\n  lm tok_1 = pareil | tel\n");
  CHECK(parse_catalog(canon) == catalog);
}

TEST_CASE("property: parse/serialize round-trip on generated catalogs") {
  gen::Rng rng(555);
  for (int i = 0; i < 60; ++i) {
    const Catalog catalog = gen::random_catalog(rng);
    const std::string once = serialize_catalog(catalog);
    CAPTURE(once);
    std::vector<Diagnostic> warnings;
    const Catalog reparsed = parse_catalog(once, &warnings);
    REQUIRE(reparsed == catalog);
    REQUIRE(serialize_catalog(reparsed) == once);
  }
}

TEST_CASE("probability helper") {
  ClueDefinition clue = minimal_clue();
  CHECK_FALSE(nonliteral_probability(clue).has_value());
  clue.relevance = RelevanceRecord{40, 5, 5, 10, 20};
  const auto p = nonliteral_probability(clue);
  REQUIRE(p.has_value());
  CHECK(*p == Ratio{1, 2});
  CHECK(p->render() == "0.5000");
  clue.relevance = RelevanceRecord{0, 0, 0, 0, 0};
  CHECK_FALSE(nonliteral_probability(clue).has_value());
}
