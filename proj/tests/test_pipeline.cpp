#include <doctest.h>

#include "support.hpp"
#include "twostep/compounds.hpp"
#include "twostep/pipeline.hpp"
#include "twostep/text.hpp"

using namespace twostep;

namespace {

const std::string kFigureLine =
    "VB-P---3P-AA--- existovat NNIP1-----A---- milión NNIP2-----A---- druh NNFS2-----A---- pizza Z:------------- .";

PipelineConfig config(PipelineMode mode, std::size_t merges = 0) {
  auto cfg = PipelineConfig::defaults(mode);
  cfg.bpe_merges = merges;
  return cfg;
}

std::vector<std::string> table1_column(std::size_t column) {
  std::vector<std::string> out;
  for (const auto& line : split_lines(testing::read_file(testing::data_path("table1.tsv"))))
    out.push_back(split_tokens(line)[column]);
  return out;
}

}  // namespace

TEST_CASE("mode defaults") {
  CHECK(PipelineConfig::defaults(PipelineMode::morphgen).bpe_merges == 49500);
  CHECK(PipelineConfig::defaults(PipelineMode::german_stemmed).bpe_merges == 29500);
  CHECK(PipelineConfig::defaults(PipelineMode::baseline).maxlen == 50);
  CHECK(PipelineConfig::defaults(PipelineMode::serialization).maxlen == 100);
  CHECK(PipelineConfig::defaults(PipelineMode::german_stemmed_split).minlen == 5);
  CHECK(PipelineConfig::defaults(PipelineMode::morphgen).word_limit() == 50);
  CHECK(PipelineConfig::defaults(PipelineMode::baseline).word_limit() == 50);
  CHECK(pipeline_mode_from_name("german-stemmed-split") == PipelineMode::german_stemmed_split);
  CHECK_FALSE(pipeline_mode_from_name("factored").has_value());
}

TEST_CASE("invalid configurations") {
  auto cfg = PipelineConfig::defaults(PipelineMode::morphgen);
  cfg.minlen = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.minlen = 30;
  cfg.maxlen = 40;  // interleaved: at most 20 words
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = PipelineConfig::defaults(PipelineMode::baseline);
  cfg.jobs = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("length filter and seeded sampling") {
  ParallelCorpus corpus;
  for (int n = 0; n < 60; ++n) {
    std::string line;
    for (int k = 0; k < n; ++k) line += "w ";
    corpus.target.push_back(line);
    corpus.source.push_back(std::to_string(n));
  }
  auto cfg = PipelineConfig::defaults(PipelineMode::german_stemmed);  // minlen 5, 50 words
  const auto kept = filter_corpus(corpus, cfg);
  CHECK(kept.size() == 46);
  CHECK(kept.source.front() == "5");
  CHECK(kept.source.back() == "50");

  cfg.sample_size = 10;
  const auto a = filter_corpus(corpus, cfg);
  const auto b = filter_corpus(corpus, cfg);
  CHECK(a.source == b.source);
  CHECK(a.size() == 10);
  CHECK(std::is_sorted(a.source.begin(), a.source.end(),
                       [](const std::string& x, const std::string& y) { return std::stoi(x) < std::stoi(y); }));
  cfg.seed = 2;
  CHECK(filter_corpus(corpus, cfg).source != a.source);

  corpus.source.pop_back();
  CHECK_THROWS_AS(filter_corpus(corpus, cfg), std::invalid_argument);
}

TEST_CASE("target encoding of the Czech example") {
  const auto lex = testing::fixture_lexicon("cs_toy.tsv");
  CHECK(join_tokens(encode_target("existují miliony druhů pizzy .", "", PipelineMode::morphgen, lex)) == kFigureLine);
  CHECK_THROWS_AS(encode_target("existují kočky .", "", PipelineMode::morphgen, lex), AnalysisFailure);
  CHECK_THROWS_AS(encode_target("existují .", "VB-P---3P-AA---", PipelineMode::morphgen, lex), AnalysisFailure);
}

TEST_CASE("parse tags steer German disambiguation") {
  const auto lex = testing::fixture_lexicon("de_toy.tsv");
  const auto surface = join_tokens(table1_column(0));
  const auto tags = join_tokens(table1_column(1));
  std::string expected;
  for (const auto& row : table1_column(2)) {
    const auto a = parse_german_analysis(row);
    if (!expected.empty()) expected += " ";
    expected += a.inflected ? a.stem_text() + " " + format_analysis(a.features) : row;
  }
  CHECK(join_tokens(encode_target(surface, tags, PipelineMode::german_stemmed, lex)) == expected);
  const auto split = encode_target(surface, tags, PipelineMode::german_stemmed_split, lex);
  CHECK(join_tokens(split).find("Meer §§<NN>§§ Boden <+NN><Masc><Dat><Sg><NA>") != std::string::npos);
}

TEST_CASE("sentences without analyses are dropped and reported") {
  const auto lex = testing::fixture_lexicon("cs_toy.tsv");
  ParallelCorpus corpus;
  corpus.target = {"existují miliony druhů pizzy .", "kočky existují .", "pizza ."};
  corpus.source = {"a", "b", "c"};
  const auto p = prepare_variant(corpus, config(PipelineMode::morphgen), lex);
  CHECK(p.kept_lines == std::vector<std::size_t>{0, 2});
  REQUIRE(p.dropped.size() == 1);
  CHECK(p.dropped[0].line == 1);
  CHECK(p.target[0] == kFigureLine);
}

TEST_CASE("tag protection keeps tags out of BPE") {
  const auto lang = testing::czech_language(3, 30, 200);
  ParallelCorpus corpus;
  corpus.target = lang.sentences;
  corpus.source = std::vector<std::string>(corpus.target.size());
  auto cfg = config(PipelineMode::morphgen, 300);
  cfg.protect_tags = true;
  const auto p = prepare_variant(corpus, cfg, lang.lexicon);
  for (const auto& line : p.target)
    for (const auto& piece : split_tokens(line))
      if (piece.size() == 15 && piece.find("@@") == std::string::npos) CHECK(is_czech_tag(piece));
  for (const auto& m : p.target_table.merges()) CHECK_FALSE(is_czech_tag(m.left + m.right));
}

TEST_CASE("source preparation") {
  CHECK(split_hyphens("hydrogen-sulfide-rich water") == "hydrogen @-@ sulfide @-@ rich water");
  CHECK(split_hyphens("- a-") == "- a-");
  auto cfg = config(PipelineMode::german_stemmed_split);
  cfg.split_source_hyphens = true;
  CHECK(prepare_source("hydrogen-sulfide-rich water", "", cfg) == "hydrogen @-@ sulfide @-@ rich water");
  CHECK(prepare_source("sulfide-rich water", "JJ NN", cfg) == "JJ sulfide HYPH @-@ JJ rich NN water");
  CHECK(prepare_source("there are", "EX VBP", config(PipelineMode::morphgen)) == "EX there VBP are");
}

TEST_CASE("external backends") {
  const std::vector<std::string> lines{"první řádek", "", "třetí"};
  CHECK(translate_external(lines, Backend{"identity"}) == lines);
  CHECK(translate_external(lines, Backend{"cat"}) == lines);
  CHECK_THROWS_AS(translate_external(lines, Backend{"exit 3"}), BackendFailure);
  CHECK_THROWS_AS(translate_external(lines, Backend{"head -n 1"}), BackendFailure);
}

TEST_CASE("a lookup translator feeds post-processing") {
  const std::string awk =
      "awk 'BEGIN { m[\"there\"]=\"VB-P---3P-AA--- existovat\"; m[\"millions\"]=\"NNIP1-----A---- milión\";"
      " m[\"kinds\"]=\"NNIP2-----A---- druh\"; m[\"pizza\"]=\"NNFS2-----A---- pizza\"; m[\".\"]=\"Z:------------- .\" }"
      " { out = \"\"; for (i = 1; i <= NF; i++) if ($i in m) out = out (out == \"\" ? \"\" : \" \") m[$i]; print out }'";
  const std::vector<std::string> source{"there are millions of kinds of pizza ."};
  const auto translated = translate_external(source, Backend{awk});
  REQUIRE(translated.size() == 1);
  CHECK(translated[0] == kFigureLine);
  const auto out = postprocess(translated, config(PipelineMode::morphgen), testing::fixture_lexicon("cs_toy.tsv"));
  CHECK(out.lines[0] == "existují miliony druhů pizzy .");
}

TEST_CASE("post-processing the worked examples") {
  const auto cs = testing::fixture_lexicon("cs_toy.tsv");
  const std::vector<std::string> fig{kFigureLine};
  CHECK(postprocess(fig, config(PipelineMode::morphgen), cs).lines[0] == "existují miliony druhů pizzy .");
  const std::vector<std::string> base{"existují miliony druhů piz@@ zy ."};
  CHECK(postprocess(base, config(PipelineMode::baseline), cs).lines[0] == "existují miliony druhů pizzy .");
}

TEST_CASE("post-processing repairs, falls back and counts") {
  const auto lex = testing::fixture_lexicon("cs_toy.tsv");
  const std::vector<std::string> lines{
      "NNFS2-----A---- piz@@ za NNIP2-----A---- kočka",   // second lemma unknown
      "druh NNIP2-----A---- druh Z:-------------",        // word without tag, trailing tag
      "NNFS2-----A---- pi@@",                             // dangling marker at the end
      "",
  };
  const auto r = postprocess(lines, config(PipelineMode::morphgen), lex);
  REQUIRE(r.lines.size() == 4);
  CHECK(r.lines[0] == "pizzy kočka");
  CHECK(r.lines[1] == "druh druhů");
  CHECK(r.lines[2] == "pi");
  CHECK(r.lines[3].empty());
  CHECK(r.dangling_markers == 1);
  CHECK(r.generation.fallbacks == 2);
  CHECK(r.generation.total == 4);
  CHECK(r.wellformedness.malformed.size() == 1);
  CHECK(r.recoveries.size() == 2);
}

TEST_CASE("serialization output keeps the generated surfaces") {
  const std::vector<std::string> lines{"NNIP1-----A---- miliony NNIP2-----A---- druhů"};
  CHECK(postprocess(lines, config(PipelineMode::serialization), {}).lines[0] == "miliony druhů");
}

TEST_CASE("German compounds without a lexicon entry go through the modifier table") {
  const auto lex = testing::fixture_lexicon("de_toy.tsv");
  const std::vector<std::string> lines{
      "Haus §§<NN>§§ Markt <+NN><Masc><Nom><Sg><NA> Oszillation §§<NN>§§ Generator <+NN><Masc><Nom><Sg><NA>",
      "Kampf §§<NN>§§ Methode <+NN><Fem><Nom><Sg><NA>",
  };
  const auto r = postprocess(lines, config(PipelineMode::german_stemmed_split), lex);
  // Heads missing from the lexicon fall back to the merged stem.
  CHECK(r.lines[0] == "Häusermarkt Oszillationsgenerator");
  CHECK(r.lines[1] == "Kampfmethode");
  CHECK(r.generation.unknown_modifiers == std::vector<std::string>{"Kampf"});
}

TEST_CASE("parallel stages match the sequential result") {
  const auto lang = testing::german_language(5, 40, 300);
  ParallelCorpus corpus;
  corpus.target = lang.sentences;
  corpus.source = std::vector<std::string>(corpus.target.size());
  auto cfg = config(PipelineMode::german_stemmed_split, 200);
  const auto seq = prepare_variant(corpus, cfg, lang.lexicon);
  cfg.jobs = 4;
  const auto par = prepare_variant(corpus, cfg, lang.lexicon);
  CHECK(seq.target == par.target);
  CHECK(seq.target_table == par.target_table);
  const auto a = postprocess(seq.target, cfg, lang.lexicon);
  cfg.jobs = 1;
  const auto b = postprocess(seq.target, cfg, lang.lexicon);
  CHECK(a.lines == b.lines);
  CHECK(a.lines == lang.sentences);
}
