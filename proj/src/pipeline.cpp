#include "twostep/pipeline.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <random>
#include <sstream>

#include "twostep/compounds.hpp"
#include "twostep/parallel.hpp"
#include "twostep/text.hpp"

namespace twostep {

bool is_protected_tag(std::string_view token) {
  return is_czech_tag(token) || is_tag_token(token, Mode::german_stemmed) || is_compound_separator(token) ||
         is_bare_token(token) || is_bare_tag(token);
}

namespace {

std::string strip_stem_markup(const std::string& token) {
  try {
    std::string out;
    for (const auto& seg : parse_stem(token)) out += seg.lexeme;
    return out;
  } catch (const MalformedAnalysis&) {
    return token;
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Generates one German word. Multi-part stems are inflected through the
// head and joined with the modifier table's in-compound forms; a full-stem
// lexicon entry is the second choice.
std::string generate_german(const ParadigmLexicon& lex, const std::string& stem_token, const GermanFeatureSeq& features,
                            GenerationReport& report) {
  GermanAnalysis analysis;
  analysis.stem = parse_stem(stem_token);
  analysis.features = features;

  std::optional<MergedCompound> merged;
  if (auto split = split_compound(analysis)) {
    merged = merge_compound(*split, lex);
    if (merged->unknown_modifiers.empty()) {
      if (auto r = inflect_compound(*merged, lex); succeeded(r)) {
        report.record_success();
        return std::get<std::string>(r);
      }
    }
  }

  auto direct = generate(lex, stem_token, features);
  if (auto* surface = std::get_if<std::string>(&direct)) {
    report.record_success();
    return *surface;
  }

  if (merged && !merged->unknown_modifiers.empty()) {
    if (auto r = inflect_compound(*merged, lex); succeeded(r)) {
      report.record_success();
      report.unknown_modifiers.insert(report.unknown_modifiers.end(), merged->unknown_modifiers.begin(),
                                      merged->unknown_modifiers.end());
      return std::get<std::string>(r);
    }
  }

  FallbackReason reason = std::get<GenerationFailure>(direct).reason;
  if (merged && !lex.has_lemma(stem_token))
    reason = lex.has_lemma(merged->head) ? FallbackReason::incompatible_tag : FallbackReason::unknown_lemma;
  report.record_fallback({stem_token, format_analysis(features), reason});
  return merged ? merged->stem : strip_stem_markup(stem_token);
}

struct LineResult {
  std::string text;
  GenerationReport generation;
  std::vector<RecoveryEvent> events;
  std::optional<MalformedLine> malformed;
  bool dangling = false;
};

LineResult postprocess_line(const std::string& raw, std::size_t line_no, const PipelineConfig& cfg,
                            const ParadigmLexicon& lex) {
  LineResult result;
  auto pieces = split_tokens(raw);
  if (!pieces.empty() && std::string_view(pieces.back()).ends_with(kBpeMarker)) {
    pieces.back().resize(pieces.back().size() - kBpeMarker.size());
    result.dangling = true;
  }
  auto tokens = revert_bpe(pieces);
  if (cfg.mode == PipelineMode::baseline) {
    result.text = join_tokens(tokens);
    return result;
  }

  const Mode mode = interleave_mode(cfg.mode);
  const bool split_mode = cfg.mode == PipelineMode::german_stemmed_split;
  try {
    decode(split_mode ? join_split_tokens(tokens, true) : tokens, mode);
  } catch (const WellformednessError& e) {
    result.malformed = MalformedLine{line_no, e.position(), e.kind()};
  }
  if (split_mode) tokens = join_split_tokens(tokens, false, &result.events);

  auto decoded = decode_lenient(tokens, mode);
  result.events.insert(result.events.end(), decoded.events.begin(), decoded.events.end());

  std::vector<std::string> words;
  words.reserve(decoded.items.size());
  for (auto& item : decoded.items) {
    if (!item.tag) {
      words.push_back(is_german(cfg.mode) ? strip_stem_markup(item.word) : item.word);
      continue;
    }
    switch (cfg.mode) {
      case PipelineMode::serialization:
        words.push_back(std::move(item.word));
        break;
      case PipelineMode::morphgen:
        words.push_back(generate_with_fallback(lex, item.word, parse_czech_tag(*item.tag), result.generation));
        break;
      default: {
        const GermanFeatureSeq features = parse_feature_seq(*item.tag);
        if (features.kind == FeatureKind::bare)
          words.push_back(std::move(item.word));
        else
          words.push_back(generate_german(lex, item.word, features, result.generation));
      }
    }
  }
  result.text = join_tokens(words);
  return result;
}

}  // namespace

// ---------------------------------------------------------------------------
// Modes and configuration

std::string_view pipeline_mode_name(PipelineMode mode) {
  switch (mode) {
    case PipelineMode::baseline: return "baseline";
    case PipelineMode::morphgen: return "morphgen";
    case PipelineMode::serialization: return "serialization";
    case PipelineMode::german_stemmed: return "german-stemmed";
    case PipelineMode::german_stemmed_split: return "german-stemmed-split";
  }
  return "?";
}

std::optional<PipelineMode> pipeline_mode_from_name(std::string_view name) {
  for (auto m : {PipelineMode::baseline, PipelineMode::morphgen, PipelineMode::serialization,
                 PipelineMode::german_stemmed, PipelineMode::german_stemmed_split})
    if (pipeline_mode_name(m) == name) return m;
  return std::nullopt;
}

Mode interleave_mode(PipelineMode mode) {
  switch (mode) {
    case PipelineMode::baseline: return Mode::baseline;
    case PipelineMode::morphgen: return Mode::morphgen;
    case PipelineMode::serialization: return Mode::serialization;
    case PipelineMode::german_stemmed:
    case PipelineMode::german_stemmed_split: return Mode::german_stemmed;
  }
  return Mode::baseline;
}

bool is_interleaved(PipelineMode mode) { return mode != PipelineMode::baseline; }

bool is_german(PipelineMode mode) {
  return mode == PipelineMode::german_stemmed || mode == PipelineMode::german_stemmed_split;
}

PipelineConfig PipelineConfig::defaults(PipelineMode mode) {
  PipelineConfig cfg;
  cfg.mode = mode;
  cfg.bpe_merges = is_german(mode) ? 29500 : 49500;
  cfg.maxlen = is_interleaved(mode) ? 100 : 50;
  cfg.minlen = is_german(mode) ? 5 : 1;
  return cfg;
}

std::size_t PipelineConfig::word_limit() const { return is_interleaved(mode) ? maxlen / 2 : maxlen; }

void PipelineConfig::validate() const {
  if (minlen < 1) throw ConfigError("minlen must be at least 1");
  if (maxlen < minlen) throw ConfigError("maxlen must not be below minlen");
  if (word_limit() < minlen)
    throw ConfigError("maxlen " + std::to_string(maxlen) + " admits no sentence of minlen " + std::to_string(minlen) +
                      " words in an interleaved mode");
  if (jobs < 1) throw ConfigError("jobs must be at least 1");
}

void ParallelCorpus::validate() const {
  if (source.size() != target.size())
    throw std::invalid_argument("source and target line counts differ: " + std::to_string(source.size()) + " vs " +
                                std::to_string(target.size()));
  if (!source_tags.empty() && source_tags.size() != source.size())
    throw std::invalid_argument("source tag file is not aligned with the source");
  if (!target_tags.empty() && target_tags.size() != target.size())
    throw std::invalid_argument("target tag file is not aligned with the target");
}

// ---------------------------------------------------------------------------
// Filtering

ParallelCorpus filter_corpus(const ParallelCorpus& corpus, const PipelineConfig& cfg) {
  corpus.validate();
  cfg.validate();
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const std::size_t n = split_tokens(corpus.target[i]).size();
    if (n >= cfg.minlen && n <= cfg.word_limit()) keep.push_back(i);
  }
  if (cfg.sample_size && *cfg.sample_size < keep.size()) {
    std::vector<std::size_t> sampled;
    std::mt19937_64 rng(cfg.seed);
    std::sample(keep.begin(), keep.end(), std::back_inserter(sampled), *cfg.sample_size, rng);
    keep = std::move(sampled);
  }
  ParallelCorpus out;
  for (std::size_t i : keep) {
    out.source.push_back(corpus.source[i]);
    out.target.push_back(corpus.target[i]);
    if (!corpus.source_tags.empty()) out.source_tags.push_back(corpus.source_tags[i]);
    if (!corpus.target_tags.empty()) out.target_tags.push_back(corpus.target_tags[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Preparation

std::vector<std::string> encode_target(std::string_view target, std::string_view target_tags, PipelineMode mode,
                                       const ParadigmLexicon& lex) {
  const auto words = split_tokens(target);
  if (mode == PipelineMode::baseline) return words;
  const auto tags = split_tokens(target_tags);
  if (!tags.empty() && tags.size() != words.size())
    throw AnalysisFailure("target has " + std::to_string(words.size()) + " words but " + std::to_string(tags.size()) +
                          " tags");

  const bool german = is_german(mode);
  std::vector<AnalyzedWord> analyzed;
  analyzed.reserve(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    std::vector<MorphAnalysis> candidates;
    for (const auto& c : analyze(lex, words[i]))
      if (std::holds_alternative<GermanFeatureSeq>(c.tag) == german) candidates.push_back(c);
    if (candidates.empty()) throw AnalysisFailure("no analysis for '" + words[i] + "'");
    if (tags.empty()) {
      analyzed.push_back({words[i], candidates.front()});
      continue;
    }
    try {
      analyzed.push_back({words[i], disambiguate(candidates, tags[i])});
    } catch (const NoCompatibleAnalysis& e) {
      throw AnalysisFailure("'" + words[i] + "': " + e.what());
    }
  }
  auto tokens = encode(analyzed, interleave_mode(mode)).tokens;
  if (mode == PipelineMode::german_stemmed_split) tokens = split_compounds_in_tokens(tokens);
  return tokens;
}

std::string split_hyphens(std::string_view line) {
  std::vector<std::string> out;
  for (const auto& word : split_tokens(line)) {
    std::size_t start = 0;
    while (true) {
      const std::size_t dash = word.find('-', start);
      if (dash == std::string::npos || dash == 0 || dash + 1 == word.size() || dash == start) {
        out.push_back(word.substr(start));
        break;
      }
      out.push_back(word.substr(start, dash - start));
      out.emplace_back("@-@");
      start = dash + 1;
    }
  }
  return join_tokens(out);
}

std::string prepare_source(std::string_view source, std::string_view source_tags, const PipelineConfig& cfg) {
  const bool hyphens = cfg.split_source_hyphens && cfg.mode == PipelineMode::german_stemmed_split;
  auto words = split_tokens(source);
  auto tags = split_tokens(source_tags);
  if (tags.empty()) return join_tokens(hyphens ? split_tokens(split_hyphens(source)) : words);
  if (hyphens) {
    std::vector<std::string> split_words, split_tags;
    for (std::size_t i = 0; i < std::min(words.size(), tags.size()); ++i)
      for (auto& piece : split_tokens(split_hyphens(words[i]))) {
        split_tags.push_back(piece == "@-@" ? "HYPH" : tags[i]);
        split_words.push_back(std::move(piece));
      }
    if (words.size() != tags.size()) throw LengthMismatch("source words and tags differ in length");
    words = std::move(split_words);
    tags = std::move(split_tags);
  }
  return join_tokens(tag_source(words, tags));
}

PreparedCorpus prepare_variant(const ParallelCorpus& corpus, const PipelineConfig& cfg, const ParadigmLexicon& lex,
                               const MergeTable* table) {
  corpus.validate();
  cfg.validate();

  struct Encoded {
    std::optional<std::string> source;
    std::optional<std::string> target;
    std::string error;
  };
  static const std::string kNone;
  const auto encoded = parallel_map<Encoded>(corpus.size(), cfg.jobs, [&](std::size_t i) {
    Encoded e;
    try {
      const auto& ttags = corpus.target_tags.empty() ? kNone : corpus.target_tags[i];
      const auto& stags = corpus.source_tags.empty() ? kNone : corpus.source_tags[i];
      e.target = join_tokens(encode_target(corpus.target[i], ttags, cfg.mode, lex));
      e.source = prepare_source(corpus.source[i], stags, cfg);
    } catch (const std::exception& ex) {
      e.error = ex.what();
      e.source.reset();
      e.target.reset();
    }
    return e;
  });

  PreparedCorpus out;
  std::vector<std::string> source_plain;
  for (std::size_t i = 0; i < encoded.size(); ++i) {
    if (!encoded[i].target) {
      out.dropped.push_back({i, encoded[i].error});
      continue;
    }
    out.kept_lines.push_back(i);
    source_plain.push_back(*encoded[i].source);
    out.target_encoded.push_back(*encoded[i].target);
  }

  const TokenPredicate protect = cfg.protect_tags ? TokenPredicate(is_protected_tag) : TokenPredicate{};
  auto count_words = [&](const std::vector<std::string>& lines, std::map<std::string, std::size_t>& counts) {
    for (const auto& line : lines)
      for (auto& t : split_tokens(line))
        if (!protect || !protect(t)) ++counts[std::move(t)];
  };
  if (table) {
    out.source_table = *table;
    out.target_table = *table;
  } else if (cfg.bpe_merges > 0) {
    if (cfg.joint_bpe) {
      std::map<std::string, std::size_t> counts;
      count_words(source_plain, counts);
      count_words(out.target_encoded, counts);
      out.source_table = learn_bpe(counts, cfg.bpe_merges);
      out.target_table = out.source_table;
    } else {
      std::map<std::string, std::size_t> src_counts, tgt_counts;
      count_words(source_plain, src_counts);
      count_words(out.target_encoded, tgt_counts);
      out.source_table = learn_bpe(src_counts, cfg.bpe_merges);
      out.target_table = learn_bpe(tgt_counts, cfg.bpe_merges);
    }
  }

  out.source.resize(source_plain.size());
  out.target.resize(out.target_encoded.size());
  parallel_chunks(out.target.size(), cfg.jobs, [&](std::size_t begin, std::size_t end) {
    BpeSegmenter src(out.source_table, protect);
    BpeSegmenter tgt(out.target_table, protect);
    for (std::size_t i = begin; i < end; ++i) {
      out.source[i] = src.segment_line(source_plain[i]);
      out.target[i] = tgt.segment_line(out.target_encoded[i]);
    }
  });
  return out;
}

// ---------------------------------------------------------------------------
// Backend

std::vector<std::string> translate_external(std::span<const std::string> lines, const Backend& backend) {
  if (backend.command == "identity") return {lines.begin(), lines.end()};

  namespace fs = std::filesystem;
  char in_name[] = "/tmp/twostep-in-XXXXXX";
  char out_name[] = "/tmp/twostep-out-XXXXXX";
  const int in_fd = ::mkstemp(in_name);
  const int out_fd = ::mkstemp(out_name);
  if (in_fd < 0 || out_fd < 0) throw BackendFailure("cannot create temporary files for the backend");
  struct Cleanup {
    const char* a;
    const char* b;
    ~Cleanup() {
      std::error_code ec;
      fs::remove(a, ec);
      fs::remove(b, ec);
    }
  } cleanup{in_name, out_name};

  {
    std::string payload;
    for (const auto& l : lines) payload += l + "\n";
    std::size_t written = 0;
    while (written < payload.size()) {
      const ssize_t n = ::write(in_fd, payload.data() + written, payload.size() - written);
      if (n <= 0) break;
      written += static_cast<std::size_t>(n);
    }
    ::lseek(in_fd, 0, SEEK_SET);
    if (written != payload.size()) throw BackendFailure("cannot write backend input");
  }

  std::fflush(nullptr);
  const pid_t pid = ::fork();
  if (pid < 0) throw BackendFailure("fork failed");
  if (pid == 0) {
    ::dup2(in_fd, STDIN_FILENO);
    ::dup2(out_fd, STDOUT_FILENO);
    ::close(in_fd);
    ::close(out_fd);
    ::execl("/bin/sh", "sh", "-c", backend.command.c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }
  ::close(in_fd);
  ::close(out_fd);
  int status = 0;
  if (::waitpid(pid, &status, 0) < 0) throw BackendFailure("waitpid failed");
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0)
    throw BackendFailure("backend '" + backend.command + "' exited with status " +
                         std::to_string(WIFEXITED(status) ? WEXITSTATUS(status) : -1));

  auto output = split_lines(read_file(out_name));
  if (output.size() != lines.size())
    throw BackendFailure("backend produced " + std::to_string(output.size()) + " lines for " +
                         std::to_string(lines.size()) + " input lines");
  return output;
}

// ---------------------------------------------------------------------------
// Post-processing

PostprocessResult postprocess(std::span<const std::string> raw_lines, const PipelineConfig& cfg,
                              const ParadigmLexicon& lex) {
  const auto per_line = parallel_map<LineResult>(
      raw_lines.size(), cfg.jobs, [&](std::size_t i) { return postprocess_line(raw_lines[i], i, cfg, lex); });
  PostprocessResult result;
  result.wellformedness.lines = raw_lines.size();
  for (std::size_t i = 0; i < per_line.size(); ++i) {
    const auto& r = per_line[i];
    result.lines.push_back(r.text);
    result.generation += r.generation;
    if (r.malformed) result.wellformedness.malformed.push_back(*r.malformed);
    for (const auto& e : r.events) result.recoveries.push_back({i, e});
    result.dangling_markers += r.dangling ? 1 : 0;
  }
  return result;
}

}  // namespace twostep
