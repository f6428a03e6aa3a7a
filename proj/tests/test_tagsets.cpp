#include <doctest.h>

#include <random>

#include "support.hpp"
#include "twostep/tagsets.hpp"
#include "twostep/text.hpp"

using namespace twostep;

TEST_CASE("Czech tags parse into named slots") {
  const auto tag = parse_czech_tag("VB-P---3P-AA---");
  CHECK(tag.pos() == 'V');
  CHECK(tag.subpos() == 'B');
  CHECK(tag.number() == 'P');
  CHECK(tag[CzechSlot::person] == '3');
  CHECK(tag[CzechSlot::tense] == 'P');
  CHECK(tag.negation() == 'A');
  CHECK(tag[CzechSlot::voice] == 'A');
  CHECK_FALSE(tag.is_set(CzechSlot::gender));
  CHECK(format_analysis(tag) == "VB-P---3P-AA---");

  const auto noun = parse_czech_tag("NNIP2-----A----");
  CHECK(noun.gender() == 'I');
  CHECK(noun.grammatical_case() == '2');
}

TEST_CASE("Czech tag validation") {
  CHECK_THROWS_AS(parse_czech_tag("NNIP2-----A---"), MalformedTag);    // 14 chars
  CHECK_THROWS_AS(parse_czech_tag("NNIP2-----A-----"), MalformedTag);  // 16
  CHECK_THROWS_AS(parse_czech_tag("nnip2-----a----"), MalformedTag);
  CHECK_THROWS_AS(parse_czech_tag("NNIP2-----A---@"), MalformedTag);
  CHECK(is_czech_tag("Z:-------------"));
  CHECK(is_czech_tag("J^-------------"));
  CHECK_FALSE(is_czech_tag("existují"));
  CHECK_FALSE(try_parse_czech_tag("pizza").has_value());
}

TEST_CASE("Czech tags round-trip for random strings over the alphabet") {
  const std::string alphabet = "ABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789:-^#}=~*%?";
  std::mt19937 rng(7);
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  for (int i = 0; i < 2000; ++i) {
    std::string raw;
    for (std::size_t k = 0; k < kCzechTagLength; ++k) raw += alphabet[pick(rng)];
    CHECK(format_analysis(parse_czech_tag(raw)) == raw);
  }
  for (int c = 0; c < 256; ++c) {
    const char ch = static_cast<char>(c);
    const bool in_alphabet = alphabet.find(ch) != std::string::npos;
    CHECK(is_czech_tag(std::string(15, ch)) == in_alphabet);
  }
}

TEST_CASE("slot names") {
  CHECK(slot_name(CzechSlot::case_) == "case");
  CHECK(slot_from_name("negation") == CzechSlot::negation);
  CHECK_FALSE(slot_from_name("mood").has_value());
}

TEST_CASE("strict alphabet files restrict slot values") {
  const auto alphabet = CzechTagAlphabet::parse("# comment\npos NVZ\nnumber SP-\n");
  CHECK(alphabet.accepts(parse_czech_tag("VB-P---3P-AA---")));
  CHECK_FALSE(alphabet.accepts(parse_czech_tag("AAIP1----1A----")));
  CHECK_THROWS_AS(alphabet.check(parse_czech_tag("NNIX1-----A----")), MalformedTag);
  CHECK_THROWS_AS(CzechTagAlphabet::parse("colour red\n"), MalformedTag);
}

TEST_CASE("German analyses from the worked examples") {
  SUBCASE("finite verb") {
    const auto a = parse_german_analysis("treffen||<+V><3><Sg><Pres><Ind>");
    CHECK(a.stem == std::vector<StemSegment>{{"treffen", ""}});
    CHECK(a.features.kind == FeatureKind::verbal_finite);
    CHECK(a.features.person() == "3");
    CHECK(a.features.number() == "Sg");
    CHECK(a.features.tense() == "Pres");
    CHECK(a.features.mood() == "Ind");
    CHECK(a.inflected);
  }
  SUBCASE("compound noun") {
    const auto a = parse_german_analysis("Meer<NN>Boden||<+NN><Masc><Dat><Sg><NA>");
    CHECK(a.stem == std::vector<StemSegment>{{"Meer", "<NN>"}, {"Boden", ""}});
    CHECK(a.features.kind == FeatureKind::nominal);
    CHECK(a.features.gender() == "Masc");
    CHECK(a.features.grammatical_case() == "Dat");
    CHECK(a.features.number() == "Sg");
    CHECK(a.features.strength() == "NA");
    CHECK(a.stem_text() == "Meer<NN>Boden");
  }
  SUBCASE("bare word") {
    const auto a = parse_german_analysis("und[KON]");
    CHECK(a.stem == std::vector<StemSegment>{{"und", ""}});
    CHECK(a.features.kind == FeatureKind::bare);
    CHECK(a.features.bare_tag() == "KON");
    CHECK_FALSE(a.inflected);
  }
  SUBCASE("adjective with degree") {
    const auto a = parse_german_analysis("vulkanisch||<+ADJ><Pos><NoGend><Dat><Sg><Wk>");
    CHECK(a.features.degree() == "Pos");
    CHECK(a.features.gender() == "NoGend");
    CHECK(a.features.strength() == "Wk");
  }
  SUBCASE("stem markup stays verbatim") {
    const auto a = parse_german_analysis("die<Def>||<+ART><Masc><Dat><Sg><St>");
    CHECK(a.stem == std::vector<StemSegment>{{"die", "<Def>"}});
    CHECK(format_analysis(a) == "die<Def>||<+ART><Masc><Dat><Sg><St>");
  }
}

TEST_CASE("every stemmed row of the example sentence round-trips") {
  std::size_t rows = 0;
  for (const auto& line : split_lines(testing::read_file(testing::data_path("table1.tsv")))) {
    const auto fields = split_tokens(line);
    REQUIRE(fields.size() == 3);
    CHECK(format_analysis(parse_german_analysis(fields[2])) == fields[2]);
    ++rows;
  }
  CHECK(rows == 21);
}

TEST_CASE("analyzer-style analyses keep their implicit boundary") {
  const std::string raw = "vulkanisch<+ADJ><Pos><NoGend><Dat><Sg><Wk>";
  const auto a = parse_german_analysis(raw);
  CHECK(a.boundary == Boundary::implicit);
  CHECK(a.stem_text() == "vulkanisch");
  CHECK(format_analysis(a) == raw);
}

TEST_CASE("other verbal shapes") {
  CHECK(parse_feature_seq("<+V><PPast>").kind == FeatureKind::participle);
  CHECK(parse_feature_seq("<+V><Inf>").kind == FeatureKind::infinitive);
  CHECK(format_analysis(parse_feature_seq("<+V><PPast>")) == "<+V><PPast>");
}

TEST_CASE("malformed German analyses are rejected") {
  CHECK_THROWS_AS(parse_feature_seq("<+NN><Fem><Acc><Sg>"), MalformedAnalysis);  // strength missing
  CHECK_THROWS_AS(parse_german_analysis("Wolke||<+NN><Fem><Acc"), MalformedAnalysis);
  CHECK_THROWS_AS(parse_german_analysis("Wolke||"), MalformedAnalysis);
  CHECK_THROWS_AS(parse_german_analysis("Wo<lke||<+NN><Fem><Acc><Sg><NA>"), MalformedAnalysis);
  CHECK_THROWS_AS(parse_feature_seq("<+V><3><Sg>"), MalformedAnalysis);
}

TEST_CASE("missing strength can be completed on request") {
  const auto seq = parse_feature_seq("<+ADJ><Pos><NoGend><Dat><Pl>", {.complete_strength = true});
  CHECK(format_analysis(seq) == "<+ADJ><Pos><NoGend><Dat><Pl><NA>");
}

TEST_CASE("feature token recognition") {
  CHECK(is_german_feature_seq("<+NN><Fem><Acc><Sg><NA>"));
  CHECK_FALSE(is_german_feature_seq("Wolke"));
  CHECK(is_bare_tag("[KON]"));
  CHECK_FALSE(is_bare_tag("<+NN>"));
}
