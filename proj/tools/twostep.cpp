// twostep: command-line front end. Each subcommand wraps one library
// operation; results go to stdout (or -o), diagnostics to stderr, and a run
// manifest is written beside the output.
#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "twostep/bpe.hpp"
#include "twostep/compounds.hpp"
#include "twostep/eval.hpp"
#include "twostep/interleave.hpp"
#include "twostep/manifest.hpp"
#include "twostep/morphlex.hpp"
#include "twostep/parallel.hpp"
#include "twostep/pipeline.hpp"
#include "twostep/text.hpp"

namespace fs = std::filesystem;
using namespace twostep;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path, RunManifest& manifest, const std::string& name) {
  std::string content;
  if (path.empty() || path == "-") {
    content.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    content.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  if (const auto bad = find_invalid_utf8(content); bad != std::string::npos)
    throw std::runtime_error((path.empty() || path == "-" ? std::string("<stdin>") : path) +
                             ": invalid UTF-8 at byte " + std::to_string(bad));
  manifest.add_input(name + ":" + (path.empty() ? "-" : path), content);
  return content;
}

std::vector<std::string> read_lines(const std::string& path, RunManifest& manifest, const std::string& name) {
  return split_lines(read_input(path, manifest, name));
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

std::string lines_text(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

ParadigmLexicon read_lexicon(const std::string& path, RunManifest& manifest) {
  if (path.empty()) return {};
  return load_lexicon(read_input(path, manifest, "lexicon"));
}

PipelineMode parse_pipeline_mode(const std::string& name) {
  auto mode = pipeline_mode_from_name(name);
  if (!mode) throw UsageError("unknown mode '" + name + "'");
  return *mode;
}

// Options shared by every subcommand.
struct Common {
  std::string output;
  std::string manifest_path;
  std::size_t jobs = 1;
};

void add_common(CLI::App* cmd, Common& c, bool with_jobs) {
  cmd->add_option("-o,--output", c.output, "Output file (default: stdout)");
  cmd->add_option("--manifest", c.manifest_path, "Run manifest path (default: <output>.manifest, else stderr)");
  if (with_jobs) cmd->add_option("-j,--jobs", c.jobs, "Worker threads for sentence-parallel stages")->check(CLI::PositiveNumber);
}

void emit_manifest(const RunManifest& manifest, const Common& c, const std::string& default_path = {}) {
  std::string path = c.manifest_path;
  if (path.empty() && !default_path.empty()) path = default_path;
  if (path.empty() && !c.output.empty() && c.output != "-") path = c.output + ".manifest";
  if (path.empty()) {
    std::cerr << manifest.to_text();
    return;
  }
  write_text(path, manifest.to_text());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-step target-side inflection toolkit: tag+lemma corpora, BPE, generation, evaluation"};
  app.set_config("--config", "", "key=value configuration file ([subcommand] sections)");
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  RunManifest manifest;
  Common common;
  std::function<void()> action;

  // prepare -----------------------------------------------------------------
  struct {
    std::string mode, src, tgt, src_tags, tgt_tags, lexicon, codes, out_prefix;
    std::size_t bpe_merges = 0, minlen = 0, maxlen = 0, sample_size = 0;
    std::uint64_t seed = 1;
    bool protect = false, separate = false, hyphens = false;
  } prep;
  auto* prepare = app.add_subcommand("prepare", "Filter a parallel corpus and build a training representation");
  prepare->add_option("--mode", prep.mode, "baseline|morphgen|serialization|german-stemmed|german-stemmed-split")
      ->required();
  auto* tgt_opt = prepare->add_option("--tgt", prep.tgt, "Target corpus (default: stdin)");
  (void)tgt_opt;
  prepare->add_option("--src", prep.src, "Source corpus, aligned with the target");
  prepare->add_option("--src-tags", prep.src_tags, "Source POS tags, one line per sentence");
  prepare->add_option("--tgt-tags", prep.tgt_tags, "Target parse tags / positional tags for disambiguation");
  prepare->add_option("--lexicon", prep.lexicon, "Paradigm lexicon TSV");
  prepare->add_option("--codes", prep.codes, "Use this merge table instead of learning one");
  auto* merges_opt = prepare->add_option("--bpe-merges", prep.bpe_merges, "BPE merge budget (default by mode)");
  auto* minlen_opt = prepare->add_option("--minlen", prep.minlen, "Minimum target words");
  auto* maxlen_opt = prepare->add_option("--maxlen", prep.maxlen, "Maximum model sequence length");
  auto* sample_opt = prepare->add_option("--sample-size", prep.sample_size, "Uniform random sample size");
  prepare->add_option("--seed", prep.seed, "Sampling seed");
  prepare->add_flag("--protect-tags", prep.protect, "Never split tag tokens with BPE");
  prepare->add_flag("--separate-bpe", prep.separate, "Learn separate source and target merge tables");
  prepare->add_flag("--split-hyphens", prep.hyphens, "Split hyphenated source words (german-stemmed-split)");
  prepare->add_option("--out-prefix", prep.out_prefix, "Write <prefix>.src/.tgt/.codes instead of stdout");
  add_common(prepare, common, true);
  prepare->callback([&] {
    action = [&] {
      const PipelineMode mode = parse_pipeline_mode(prep.mode);
      PipelineConfig cfg = PipelineConfig::defaults(mode);
      if (merges_opt->count()) cfg.bpe_merges = prep.bpe_merges;
      if (minlen_opt->count()) cfg.minlen = prep.minlen;
      if (maxlen_opt->count()) cfg.maxlen = prep.maxlen;
      if (sample_opt->count()) cfg.sample_size = prep.sample_size;
      cfg.seed = prep.seed;
      cfg.protect_tags = prep.protect;
      cfg.joint_bpe = !prep.separate;
      cfg.split_source_hyphens = prep.hyphens;
      cfg.jobs = common.jobs;
      cfg.lexicon_path = prep.lexicon;
      cfg.merge_table_path = prep.codes;
      cfg.validate();
      if (mode != PipelineMode::baseline && prep.lexicon.empty()) throw UsageError("--lexicon is required for " + prep.mode);

      const ParadigmLexicon lex = read_lexicon(prep.lexicon, manifest);
      ParallelCorpus corpus;
      corpus.target = read_lines(prep.tgt, manifest, "target");
      corpus.source = prep.src.empty() ? std::vector<std::string>(corpus.target.size())
                                       : read_lines(prep.src, manifest, "source");
      if (!prep.src_tags.empty()) corpus.source_tags = read_lines(prep.src_tags, manifest, "source-tags");
      if (!prep.tgt_tags.empty()) corpus.target_tags = read_lines(prep.tgt_tags, manifest, "target-tags");

      std::optional<MergeTable> table;
      if (!prep.codes.empty()) table = MergeTable::parse(read_input(prep.codes, manifest, "codes"));

      const ParallelCorpus filtered = filter_corpus(corpus, cfg);
      const PreparedCorpus prepared = prepare_variant(filtered, cfg, lex, table ? &*table : nullptr);
      for (const auto& d : prepared.dropped) std::cerr << "dropped sentence " << d.line + 1 << ": " << d.message << "\n";

      manifest.set("mode", prep.mode);
      manifest.set("bpe_merges", std::to_string(cfg.bpe_merges));
      manifest.set("minlen", std::to_string(cfg.minlen));
      manifest.set("maxlen", std::to_string(cfg.maxlen));
      manifest.set("sample_size", cfg.sample_size ? std::to_string(*cfg.sample_size) : "none");
      manifest.set("protect_tags", cfg.protect_tags ? "true" : "false");
      manifest.set("joint_bpe", cfg.joint_bpe ? "true" : "false");
      manifest.set("split_hyphens", cfg.split_source_hyphens ? "true" : "false");
      manifest.set("jobs", std::to_string(cfg.jobs));
      manifest.seed = std::to_string(cfg.seed);
      manifest.counters["input_sentences"] = corpus.size();
      manifest.counters["filtered_out"] = corpus.size() - filtered.size();
      manifest.counters["analysis_failures"] = prepared.dropped.size();
      manifest.counters["output_sentences"] = prepared.target.size();
      manifest.counters["target_merges"] = prepared.target_table.size();

      if (prep.out_prefix.empty()) {
        write_text(common.output, lines_text(prepared.target));
        emit_manifest(manifest, common);
        return;
      }
      write_text(prep.out_prefix + ".src", lines_text(prepared.source));
      write_text(prep.out_prefix + ".tgt", lines_text(prepared.target));
      if (cfg.joint_bpe || table) {
        write_text(prep.out_prefix + ".codes", prepared.target_table.str());
      } else {
        write_text(prep.out_prefix + ".src.codes", prepared.source_table.str());
        write_text(prep.out_prefix + ".tgt.codes", prepared.target_table.str());
      }
      emit_manifest(manifest, common, prep.out_prefix + ".manifest");
    };
  });

  // bpe-learn -----------------------------------------------------------------
  struct {
    std::string input;
    std::size_t merges = 0;
    bool protect = false;
  } learn;
  auto* bpe_learn = app.add_subcommand("bpe-learn", "Learn a BPE merge table");
  bpe_learn->add_option("input", learn.input, "Corpus (default: stdin)");
  bpe_learn->add_option("--merges", learn.merges, "Number of merges")->required();
  bpe_learn->add_flag("--protect-tags", learn.protect, "Exclude tag tokens from learning");
  add_common(bpe_learn, common, false);
  bpe_learn->callback([&] {
    action = [&] {
      std::map<std::string, std::size_t> counts;
      for (const auto& line : read_lines(learn.input, manifest, "corpus"))
        for (auto& t : split_tokens(line))
          if (!learn.protect || !is_protected_tag(t))
            ++counts[std::move(t)];
      const MergeTable table = learn_bpe(counts, learn.merges);
      manifest.set("merges", std::to_string(learn.merges));
      manifest.set("protect_tags", learn.protect ? "true" : "false");
      manifest.counters["learned_merges"] = table.size();
      write_text(common.output, table.str());
      emit_manifest(manifest, common);
    };
  });

  // bpe-apply -------------------------------------------------------------------
  struct {
    std::string input, codes;
    bool protect = false;
  } apply;
  auto* bpe_apply = app.add_subcommand("bpe-apply", "Segment text with a merge table");
  bpe_apply->add_option("input", apply.input, "Text (default: stdin)");
  bpe_apply->add_option("--codes", apply.codes, "Merge table")->required();
  bpe_apply->add_flag("--protect-tags", apply.protect, "Never split tag tokens");
  add_common(bpe_apply, common, true);
  bpe_apply->callback([&] {
    action = [&] {
      const MergeTable table = MergeTable::parse(read_input(apply.codes, manifest, "codes"));
      const auto lines = read_lines(apply.input, manifest, "input");
      TokenPredicate protect;
      if (apply.protect) protect = is_protected_tag;
      std::vector<std::string> out(lines.size());
      parallel_chunks(lines.size(), common.jobs, [&](std::size_t b, std::size_t e) {
        BpeSegmenter seg(table, protect);
        for (std::size_t i = b; i < e; ++i) out[i] = seg.segment_line(lines[i]);
      });
      manifest.set("protect_tags", apply.protect ? "true" : "false");
      manifest.counters["lines"] = lines.size();
      write_text(common.output, lines_text(out));
      emit_manifest(manifest, common);
    };
  });

  // bpe-revert ------------------------------------------------------------------
  std::string revert_input;
  auto* bpe_revert = app.add_subcommand("bpe-revert", "Undo BPE segmentation");
  bpe_revert->add_option("input", revert_input, "Segmented text (default: stdin)");
  add_common(bpe_revert, common, false);
  bpe_revert->callback([&] {
    action = [&] {
      std::vector<std::string> out;
      const auto lines = read_lines(revert_input, manifest, "input");
      for (std::size_t i = 0; i < lines.size(); ++i) {
        try {
          out.push_back(revert_bpe_line(lines[i]));
        } catch (const DanglingMarker& e) {
          throw std::runtime_error("line " + std::to_string(i + 1) + ": " + e.what());
        }
      }
      manifest.counters["lines"] = lines.size();
      write_text(common.output, lines_text(out));
      emit_manifest(manifest, common);
    };
  });

  // analyze -----------------------------------------------------------------------
  struct {
    std::string input, lexicon;
  } an;
  auto* analyze_cmd = app.add_subcommand(
      "analyze", "List analyses per input line \"surface [context]\"; with a context, disambiguate");
  analyze_cmd->add_option("input", an.input, "Words (default: stdin)");
  analyze_cmd->add_option("--lexicon", an.lexicon, "Paradigm lexicon TSV")->required();
  add_common(analyze_cmd, common, false);
  analyze_cmd->callback([&] {
    action = [&] {
      const ParadigmLexicon lex = read_lexicon(an.lexicon, manifest);
      std::string out;
      std::size_t unknown = 0;
      for (const auto& line : read_lines(an.input, manifest, "input")) {
        const auto fields = split_tokens(line);
        if (fields.empty()) {
          out += "\n";
          continue;
        }
        auto candidates = analyze(lex, fields[0]);
        if (candidates.empty()) ++unknown;
        if (fields.size() > 1 && !candidates.empty()) candidates = {disambiguate(candidates, fields[1])};
        out += fields[0];
        for (const auto& c : candidates) out += "\t" + c.lemma + " " + format_tag(c.tag);
        out += "\n";
      }
      manifest.counters["unknown_surfaces"] = unknown;
      write_text(common.output, out);
      emit_manifest(manifest, common);
    };
  });

  // generate ------------------------------------------------------------------------
  struct {
    std::string input, lexicon, report;
    bool strict = false;
  } gen;
  auto* generate_cmd = app.add_subcommand("generate", "Generate surfaces from \"lemma tag\" lines");
  generate_cmd->add_option("input", gen.input, "lemma/tag lines (default: stdin)");
  generate_cmd->add_option("--lexicon", gen.lexicon, "Paradigm lexicon TSV")->required();
  generate_cmd->add_option("--report", gen.report, "Write the generation report here");
  generate_cmd->add_flag("--no-fallback", gen.strict, "Fail instead of falling back to the lemma");
  add_common(generate_cmd, common, false);
  generate_cmd->callback([&] {
    action = [&] {
      const ParadigmLexicon lex = read_lexicon(gen.lexicon, manifest);
      GenerationReport report;
      std::string out;
      std::size_t line_no = 0;
      for (const auto& line : read_lines(gen.input, manifest, "input")) {
        ++line_no;
        const auto fields = split_tokens(line);
        if (fields.size() != 2) throw std::runtime_error("line " + std::to_string(line_no) + ": expected 'lemma tag'");
        const MorphTag tag = parse_tag(fields[1]);
        if (gen.strict) {
          auto r = generate(lex, fields[0], tag);
          if (!succeeded(r))
            throw std::runtime_error("line " + std::to_string(line_no) + ": generation failed (" +
                                     std::string(reason_name(std::get<GenerationFailure>(r).reason)) + ")");
          out += std::get<std::string>(r) + "\n";
        } else {
          out += generate_with_fallback(lex, fields[0], tag, report) + "\n";
        }
      }
      manifest.counters["generated_total"] = report.total;
      manifest.counters["fallbacks"] = report.fallbacks;
      if (!gen.report.empty()) write_text(gen.report, report.to_text());
      write_text(common.output, out);
      emit_manifest(manifest, common);
    };
  });

  // split-compounds ---------------------------------------------------------------------
  std::string split_input;
  auto* split_cmd = app.add_subcommand("split-compounds", "Split compounds in german-stemmed lines");
  split_cmd->add_option("input", split_input, "german-stemmed text (default: stdin)");
  add_common(split_cmd, common, false);
  split_cmd->callback([&] {
    action = [&] {
      std::vector<std::string> out;
      for (const auto& line : read_lines(split_input, manifest, "input"))
        out.push_back(join_tokens(split_compounds_in_tokens(split_tokens(line))));
      manifest.counters["lines"] = out.size();
      write_text(common.output, lines_text(out));
      emit_manifest(manifest, common);
    };
  });

  // merge-compounds -----------------------------------------------------------------------
  struct {
    std::string input, lexicon;
    bool strict = false;
  } mc;
  auto* merge_cmd = app.add_subcommand("merge-compounds", "Rejoin split compounds into concatenated stems");
  merge_cmd->add_option("input", mc.input, "Split german-stemmed text (default: stdin)");
  merge_cmd->add_option("--lexicon", mc.lexicon, "Paradigm lexicon TSV with @mod rows")->required();
  merge_cmd->add_flag("--strict", mc.strict, "Fail on modifiers missing from the modifier table");
  add_common(merge_cmd, common, false);
  merge_cmd->callback([&] {
    action = [&] {
      const ParadigmLexicon lex = read_lexicon(mc.lexicon, manifest);
      std::vector<std::string> out;
      std::size_t unknown = 0;
      for (const auto& line : read_lines(mc.input, manifest, "input")) {
        const auto joined = join_split_tokens(split_tokens(line), true);
        std::vector<std::string> tokens;
        for (std::size_t i = 0; i < joined.size(); ++i) {
          if (i + 1 < joined.size() && is_tag_token(joined[i + 1], Mode::german_stemmed) && !is_bare_token(joined[i])) {
            GermanAnalysis a;
            a.stem = parse_stem(joined[i]);
            a.features = parse_feature_seq(joined[i + 1]);
            if (auto split = split_compound(a)) {
              const auto merged =
                  merge_compound(*split, lex, mc.strict ? ModifierPolicy::strict : ModifierPolicy::degrade);
              unknown += merged.unknown_modifiers.size();
              for (const auto& m : merged.unknown_modifiers) std::cerr << "unknown modifier: " << m << "\n";
              tokens.push_back(merged.stem);
              tokens.push_back(joined[i + 1]);
              ++i;
              continue;
            }
          }
          tokens.push_back(joined[i]);
        }
        out.push_back(join_tokens(tokens));
      }
      manifest.counters["unknown_modifiers"] = unknown;
      write_text(common.output, lines_text(out));
      emit_manifest(manifest, common);
    };
  });

  // translate -------------------------------------------------------------------------------
  struct {
    std::string input, backend = "identity";
  } tr;
  auto* translate_cmd = app.add_subcommand("translate", "Pipe prepared lines through an external translator");
  translate_cmd->add_option("input", tr.input, "Prepared lines (default: stdin)");
  translate_cmd->add_option("--backend", tr.backend, "Shell command, or 'identity'");
  add_common(translate_cmd, common, false);
  translate_cmd->callback([&] {
    action = [&] {
      const auto lines = read_lines(tr.input, manifest, "input");
      const auto out = translate_external(lines, Backend{tr.backend});
      manifest.set("backend", tr.backend);
      manifest.counters["lines"] = out.size();
      write_text(common.output, lines_text(out));
      emit_manifest(manifest, common);
    };
  });

  // postprocess ----------------------------------------------------------------------------------
  struct {
    std::string input, mode, lexicon, report;
  } pp;
  auto* post_cmd = app.add_subcommand("postprocess", "Turn system output back into inflected surface text");
  post_cmd->add_option("input", pp.input, "System output (default: stdin)");
  post_cmd->add_option("--mode", pp.mode, "Representation of the input")->required();
  post_cmd->add_option("--lexicon", pp.lexicon, "Paradigm lexicon TSV");
  post_cmd->add_option("--report", pp.report, "Write generation and well-formedness reports here");
  add_common(post_cmd, common, true);
  post_cmd->callback([&] {
    action = [&] {
      const PipelineMode mode = parse_pipeline_mode(pp.mode);
      if ((mode == PipelineMode::morphgen || is_german(mode)) && pp.lexicon.empty())
        throw UsageError("--lexicon is required for " + pp.mode);
      PipelineConfig cfg = PipelineConfig::defaults(mode);
      cfg.jobs = common.jobs;
      const ParadigmLexicon lex = read_lexicon(pp.lexicon, manifest);
      const auto result = postprocess(read_lines(pp.input, manifest, "input"), cfg, lex);
      for (const auto& r : result.recoveries)
        std::cerr << "line " << r.line + 1 << ": repaired " << kind_name(r.event.kind) << " near token "
                  << r.event.position << " ('" << r.event.token << "')\n";
      manifest.set("mode", pp.mode);
      manifest.set("jobs", std::to_string(cfg.jobs));
      manifest.counters["lines"] = result.lines.size();
      manifest.counters["generated_total"] = result.generation.total;
      manifest.counters["fallbacks"] = result.generation.fallbacks;
      manifest.counters["unknown_modifiers"] = result.generation.unknown_modifiers.size();
      manifest.counters["malformed_lines"] = result.wellformedness.malformed.size();
      manifest.counters["repairs"] = result.recoveries.size();
      manifest.counters["dangling_markers"] = result.dangling_markers;
      if (!pp.report.empty()) write_text(pp.report, result.generation.to_text() + result.wellformedness.to_text());
      write_text(common.output, lines_text(result.lines));
      emit_manifest(manifest, common);
    };
  });

  // bleu -------------------------------------------------------------------------------------------
  struct {
    std::string hyp, ref;
    bool lowercase = false, smooth = false;
  } bl;
  auto* bleu_cmd = app.add_subcommand("bleu", "Corpus BLEU-4");
  bleu_cmd->add_option("hypotheses", bl.hyp, "System output")->required();
  bleu_cmd->add_option("references", bl.ref, "Reference translations")->required();
  bleu_cmd->add_flag("--lowercase", bl.lowercase, "Fold case before matching");
  bleu_cmd->add_flag("--smooth", bl.smooth, "Add-one smoothing for higher-order precisions");
  add_common(bleu_cmd, common, false);
  bleu_cmd->callback([&] {
    action = [&] {
      const auto hyp = read_lines(bl.hyp, manifest, "hypotheses");
      const auto ref = read_lines(bl.ref, manifest, "references");
      const double score = bleu(hyp, ref, {.lowercase = bl.lowercase, .smooth = bl.smooth});
      manifest.set("lowercase", bl.lowercase ? "true" : "false");
      manifest.set("smooth", bl.smooth ? "true" : "false");
      manifest.counters["sentences"] = hyp.size();
      write_text(common.output, format_bleu(score) + "\n");
      emit_manifest(manifest, common);
    };
  });

  // novel-forms ---------------------------------------------------------------------------------------
  struct {
    std::string hyp, train, src, ref;
    bool lowercase = false;
  } nf;
  auto* novel_cmd = app.add_subcommand("novel-forms", "Count output tokens unseen in training and source");
  novel_cmd->add_option("outputs", nf.hyp, "System output (default: stdin)");
  novel_cmd->add_option("--train", nf.train, "Training target corpus")->required();
  novel_cmd->add_option("--src", nf.src, "Source sentences aligned with the output")->required();
  novel_cmd->add_option("--ref", nf.ref, "References aligned with the output")->required();
  novel_cmd->add_flag("--lowercase", nf.lowercase, "Case-insensitive matching");
  add_common(novel_cmd, common, false);
  novel_cmd->callback([&] {
    action = [&] {
      const auto vocab = build_vocabulary(read_lines(nf.train, manifest, "train"), nf.lowercase);
      const auto report = novel_forms(read_lines(nf.hyp, manifest, "outputs"), vocab,
                                      read_lines(nf.src, manifest, "source"), read_lines(nf.ref, manifest, "references"),
                                      {.lowercase = nf.lowercase});
      manifest.set("lowercase", nf.lowercase ? "true" : "false");
      manifest.counters["novel_tokens"] = report.novel_tokens;
      manifest.counters["novel_types"] = report.novel_types;
      manifest.counters["confirmed_by_reference"] = report.confirmed_by_reference;
      write_text(common.output, report.to_text());
      emit_manifest(manifest, common);
    };
  });

  // stats ---------------------------------------------------------------------------------------------
  struct {
    std::vector<std::string> vocab;
    std::vector<std::string> names;
    std::string fragments;
    std::size_t merges = 0;
    std::size_t top = 15;
    bool protect = false;
  } st;
  auto* stats_cmd = app.add_subcommand("stats", "Vocabulary sizes and word-end fragment counts");
  stats_cmd->add_option("--vocab", st.vocab, "Corpus variants for the vocabulary table");
  stats_cmd->add_option("--names", st.names, "Row names for --vocab (default: file stems)");
  stats_cmd->add_option("--merges", st.merges, "BPE merges learned per variant for the second column");
  stats_cmd->add_flag("--protect-tags", st.protect, "Keep tag tokens whole");
  stats_cmd->add_option("--fragments", st.fragments, "Segmented corpus for word-end fragment counts");
  stats_cmd->add_option("--top", st.top, "Fragments to print (0 = all)");
  add_common(stats_cmd, common, false);
  stats_cmd->callback([&] {
    action = [&] {
      if (st.vocab.empty() && st.fragments.empty()) throw UsageError("stats needs --vocab and/or --fragments");
      if (!st.names.empty() && st.names.size() != st.vocab.size())
        throw UsageError("--names must match the number of --vocab files");
      std::string out;
      TokenPredicate protect;
      if (st.protect) protect = is_protected_tag;
      if (!st.vocab.empty()) {
        std::vector<CorpusVariant> variants;
        for (std::size_t i = 0; i < st.vocab.size(); ++i) {
          CorpusVariant v;
          v.name = st.names.empty() ? fs::path(st.vocab[i]).stem().string() : st.names[i];
          v.lines = read_lines(st.vocab[i], manifest, "variant");
          std::vector<std::string> tokens;
          for (const auto& l : v.lines)
            for (auto& t : split_tokens(l)) tokens.push_back(std::move(t));
          v.table = learn_bpe(tokens, st.merges, protect);
          variants.push_back(std::move(v));
        }
        const auto report = vocab_stats(variants, protect);
        out += report.to_text();
        for (const auto& r : report.rows) manifest.counters["vocab:" + r.name] = r.vocab_size;
      }
      if (!st.fragments.empty()) {
        const auto frags = word_end_fragment_stats(read_lines(st.fragments, manifest, "segmented"));
        if (!out.empty()) out += "\n";
        out += "freq\tpart\n";
        for (std::size_t i = 0; i < frags.size() && (st.top == 0 || i < st.top); ++i)
          out += std::to_string(frags[i].frequency) + "\t" + frags[i].fragment + "\n";
        manifest.counters["distinct_fragments"] = frags.size();
      }
      manifest.set("merges", std::to_string(st.merges));
      write_text(common.output, out);
      emit_manifest(manifest, common);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  manifest.subcommand = app.get_subcommands().front()->get_name();
  try {
    action();
  } catch (const UsageError& e) {
    std::cerr << "twostep " << manifest.subcommand << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "twostep " << manifest.subcommand << ": " << e.what() << "\n";
    return 1;
  }
  return 0;
}
