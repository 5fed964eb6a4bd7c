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

#include "stk/tagger.hpp"
#include "support/generators.hpp"

using namespace stk;

namespace {

std::vector<Token> words(const std::string& text) {
  std::vector<Token> out;
  for (const Sentence& s : tokenize_document(text).sentences)
    out.insert(out.end(), s.tokens.begin(), s.tokens.end());
  return out;
}

}  // namespace

TEST_CASE("tag notation parsing") {
  CHECK(parse_tag("N") == PosTag{Category::N, Gender::none, Number::none});
  CHECK(parse_tag("N:m:s") == PosTag{Category::N, Gender::masculine, Number::singular});
  CHECK(parse_tag("ADJ:f") == PosTag{Category::ADJ, Gender::feminine, Number::none});
  CHECK(parse_tag("DET:p") == PosTag{Category::DET, Gender::none, Number::plural});
  CHECK_THROWS_AS(parse_tag("XYZ"), ParseError);
  CHECK_THROWS_AS(parse_tag("V:m"), ParseError);    // verbs carry no features
  CHECK_THROWS_AS(parse_tag("N:m:f"), ParseError);  // duplicate gender
  CHECK(format_tag(parse_tag("N:f:p")) == "N:f:p");
}

TEST_CASE("single-entry lexicon") {
  const Lexicon lex = parse_lexicon("chien\tN:m:s\tchien\n");
  const auto* readings = lex.lookup("chien");
  REQUIRE(readings != nullptr);
  REQUIRE(readings->size() == 1);
  CHECK(readings->front().tag == PosTag{Category::N, Gender::masculine, Number::singular});
  CHECK(readings->front().lemma == "chien");
}

TEST_CASE("duplicate surfaces merge readings in file order") {
  const Lexicon lex = parse_lexicon("ferme\tN:f:s\tferme\nferme\tV\tfermer\n");
  const auto* readings = lex.lookup("ferme");
  REQUIRE(readings != nullptr);
  REQUIRE(readings->size() == 2);
  CHECK(readings->at(0).tag.category == Category::N);
  CHECK(readings->at(0).lemma == "ferme");
  CHECK(readings->at(1).tag.category == Category::V);
  CHECK(readings->at(1).lemma == "fermer");
}

TEST_CASE("malformed lexicon line reports its number") {
  try {
    parse_lexicon("chien\tN\tchien\nbad line\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse_lexicon("bad line\n"), ParseError);
}

TEST_CASE("empty lexicon is rejected") {
  CHECK_THROWS_WITH_AS(parse_lexicon(""), "empty lexicon", ParseError);
  CHECK_THROWS_AS(parse_lexicon("# only comments\n"), ParseError);
}

TEST_CASE("lexicon directives set guesser and default") {
  const Lexicon lex = parse_lexicon(
      "# demo\n"
      "@suffix ment ADV\n"
      "@suffix tion N:f\n"
      "@default OTHER\n"
      "chien\tN:m:s\tchien\n");
  REQUIRE(lex.suffix_rules.size() == 2);
  CHECK(lex.suffix_rules[0].suffix == "ment");
  CHECK(lex.default_tag.category == Category::OTHER);
  CHECK_THROWS_AS(parse_lexicon("@bogus x\nchien\tN\tchien\n"), ParseError);
}

TEST_CASE("empty token sequence tags to nothing") {
  const Lexicon lex = parse_lexicon("chien\tN\tchien\n");
  CHECK(tag({}, lex).empty());
}

TEST_CASE("baseline assigns first reading, punctuation and numbers are fixed") {
  const Lexicon lex = parse_lexicon("le\tDET:m:s\tle\nchien\tN:m:s\tchien\ndort\tV\tdormir\n");
  const auto tagged = tag(words("Le chien dort 3 fois."), lex);
  REQUIRE(tagged.size() == 6);
  CHECK(tagged[0].tag.category == Category::DET);  // lowercased lookup
  CHECK(tagged[1].tag.category == Category::N);
  CHECK(tagged[1].lemma == "chien");
  CHECK(tagged[2].tag.category == Category::V);
  CHECK(tagged[2].lemma == "dormir");
  CHECK(tagged[3].tag.category == Category::OTHER);  // number
  CHECK(tagged[4].tag.category == Category::N);      // unknown word -> default
  CHECK(tagged[4].lemma == "fois");
  CHECK(tagged[5].tag.category == Category::PUNCT);
}

TEST_CASE("suffix guesser fires before the default") {
  Lexicon lex = parse_lexicon("@suffix ment ADV\nchien\tN\tchien\n");
  const auto tagged = tag(words("rapidement"), lex);
  REQUIRE(tagged.size() == 1);
  CHECK(tagged[0].tag.category == Category::ADV);
  CHECK(tagged[0].lemma == "rapidement");
}

TEST_CASE("contextual rule rewrites and adopts the matching reading") {
  const Lexicon lex = parse_lexicon("la\tDET:f:s\tla\nferme\tV\tfermer\nferme\tN:f:s\tferme\n");
  const auto rules = parse_rules("V>N prev_tag_is DET\n");
  const auto tagged = tag(words("la ferme"), lex, rules);
  REQUIRE(tagged.size() == 2);
  CHECK(tagged[1].tag == PosTag{Category::N, Gender::feminine, Number::singular});
  CHECK(tagged[1].lemma == "ferme");
}

TEST_CASE("rules see the tags from the start of their own pass") {
  // tokens tagged [DET, N, N]; rule N>DET prev_tag_is DET would cascade if the
  // pass read its own output: [DET, DET, DET]. Snapshot semantics stop at
  // [DET, DET, N].
  const Lexicon lex = parse_lexicon("le\tDET\tle\nx\tN\tx\n");
  const auto rules = parse_rules("N>DET prev_tag_is DET\n");
  const auto tagged = tag(words("le x x"), lex, rules);
  REQUIRE(tagged.size() == 3);
  CHECK(tagged[0].tag.category == Category::DET);
  CHECK(tagged[1].tag.category == Category::DET);
  CHECK(tagged[2].tag.category == Category::N);
}

TEST_CASE("word and surround triggers") {
  const Lexicon lex = parse_lexicon("a\tN\ta\nb\tV\tb\nc\tPREP\tc\n");
  const auto r1 = parse_rules("N>ADV next_word_is b\n");
  CHECK(tag(words("a b"), lex, r1)[0].tag.category == Category::ADV);
  const auto r2 = parse_rules("V>CONJ surrounded_by_tags N PREP\n");
  const auto tagged = tag(words("a b c"), lex, r2);
  CHECK(tagged[1].tag.category == Category::CONJ);
  const auto r3 = parse_rules("N>PRO prev_word_is b\n");
  CHECK(tag(words("b a"), lex, r3)[1].tag.category == Category::PRO);
}

TEST_CASE("feature-less target category drops gender and number") {
  const Lexicon lex = parse_lexicon("la\tDET:f:s\tla\nporte\tN:f:s\tporte\n");
  const auto rules = parse_rules("N>V prev_tag_is DET\n");
  const auto tagged = tag(words("la porte"), lex, rules);
  CHECK(tagged[1].tag == PosTag{Category::V, Gender::none, Number::none});
  CHECK(tagged[1].lemma == "porte");  // no V reading to adopt
}

TEST_CASE("tagging is deterministic under rules") {
  const Lexicon lex = parse_lexicon("la\tDET:f:s\tla\nferme\tV\tfermer\nferme\tN:f:s\tferme\n");
  const auto rules = parse_rules("V>N prev_tag_is DET\nN>ADJ next_tag_is PUNCT\n");
  const auto tokens = words("la ferme la ferme.");
  CHECK(tag(tokens, lex, rules) == tag(tokens, lex, rules));
}

TEST_CASE("rule parsing errors") {
  CHECK_THROWS_AS(parse_rules("N>N prev_tag_is DET\n"), ParseError);
  CHECK_THROWS_AS(parse_rules("N prev_tag_is DET\n"), ParseError);
  CHECK_THROWS_AS(parse_rules("N>V bogus_trigger DET\n"), ParseError);
  CHECK_THROWS_AS(parse_rules("N>V prev_tag_is\n"), ParseError);
  CHECK_THROWS_AS(parse_rules("N>V surrounded_by_tags DET\n"), ParseError);
  CHECK(parse_rules("# comment\n\n").empty());
}

TEST_CASE("properties: length preserved, lexicon words never defaulted") {
  gen::Rng rng(123);
  const Lexicon lex = parse_lexicon(
      "@default OTHER\n"
      "chien\tN:m:s\tchien\ntour\tN:f:s\ttour\ngrand\tADJ:m:s\tgrand\nvite\tADV\tvite\n"
      "sur\tPREP\tsur\nle\tDET:m:s\tle\nlui\tPRO:m:s\tlui\net\tCONJ\tet\ndort\tV\tdormir\n");
  const std::vector<std::string> vocab = {"chien", "tour", "grand", "vite", "sur",
                                          "le",    "lui",  "et",    "dort", "inconnu"};
  for (int i = 0; i < 100; ++i) {
    std::string text;
    const std::size_t n = gen::below(rng, 12);
    for (std::size_t k = 0; k < n; ++k) {
      if (!text.empty()) text += ' ';
      text += gen::pick(rng, vocab);
    }
    const auto tokens = words(text);
    const auto tagged = tag(tokens, lex);
    REQUIRE(tagged.size() == tokens.size());
    for (const TaggedToken& tt : tagged) {
      if (tt.token.kind != TokenKind::word) continue;
      CHECK(!tt.lemma.empty());
      if (lex.lookup(detail::ascii_lower(tt.token.surface)) != nullptr)
        CHECK(tt.tag.category != Category::OTHER);
    }
  }
}

TEST_CASE("tagged format round-trips through its parser") {
  const Lexicon lex = parse_lexicon("le\tDET:m:s\tle\nchien\tN:m:s\tchien\ndort\tV\tdormir\n");
  std::vector<std::vector<TaggedToken>> sentences;
  for (const Sentence& s : tokenize_document("Le chien dort. Le chien dort.").sentences)
    sentences.push_back(tag(s.tokens, lex));
  const std::string formatted = format_tagged_document(sentences);
  CHECK(formatted ==
        "Le\tDET:m:s\tle\nchien\tN:m:s\tchien\ndort\tV\tdormir\n.\tPUNCT\t.\n"
        "\n"
        "Le\tDET:m:s\tle\nchien\tN:m:s\tchien\ndort\tV\tdormir\n.\tPUNCT\t.\n");
  const auto parsed = parse_tagged(formatted);
  REQUIRE(parsed.size() == 2);
  CHECK(format_tagged_document(parsed) == formatted);  // byte-exact contract
  for (std::size_t si = 0; si < parsed.size(); ++si) {
    REQUIRE(parsed[si].size() == sentences[si].size());
    for (std::size_t i = 0; i < parsed[si].size(); ++i) {
      CHECK(parsed[si][i].token.surface == sentences[si][i].token.surface);
      CHECK(parsed[si][i].tag == sentences[si][i].tag);
      CHECK(parsed[si][i].lemma == sentences[si][i].lemma);
    }
  }
  const std::string implied = reconstruct_text(parsed);
  for (const auto& sentence : parsed)
    for (const TaggedToken& tt : sentence)
      CHECK(implied.substr(tt.token.span.start, tt.token.span.length()) == tt.token.surface);
}

TEST_CASE("tagged parser rejects malformed lines") {
  CHECK_THROWS_AS(parse_tagged("le\tDET\n"), ParseError);
  CHECK_THROWS_AS(parse_tagged("le\tBAD\tle\n"), ParseError);
  CHECK_THROWS_AS(parse_tagged("\tDET\tle\n"), ParseError);
  CHECK(parse_tagged("").empty());
}
