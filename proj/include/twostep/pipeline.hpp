// End-to-end orchestration: filtering, variant preparation, the external
// translation backend, and post-processing back to inflected text.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "twostep/bpe.hpp"
#include "twostep/eval.hpp"
#include "twostep/interleave.hpp"
#include "twostep/morphlex.hpp"

namespace twostep {

enum class PipelineMode { baseline, morphgen, serialization, german_stemmed, german_stemmed_split };

std::string_view pipeline_mode_name(PipelineMode mode);
std::optional<PipelineMode> pipeline_mode_from_name(std::string_view name);
Mode interleave_mode(PipelineMode mode);
bool is_interleaved(PipelineMode mode);
bool is_german(PipelineMode mode);

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct PipelineConfig {
  PipelineMode mode = PipelineMode::morphgen;
  std::size_t bpe_merges = 49500;
  /// Maximum length of the sequence the translation model sees; in
  /// interleaved modes a word becomes two tokens.
  std::size_t maxlen = 100;
  std::size_t minlen = 1;
  std::optional<std::size_t> sample_size;
  std::uint64_t seed = 1;
  bool protect_tags = false;
  bool joint_bpe = true;
  /// Split hyphenated source words into "a @-@ b" (compound-split variant).
  bool split_source_hyphens = false;
  std::size_t jobs = 1;
  std::string lexicon_path;
  std::string merge_table_path;

  /// Language-specific defaults: 49500 merges for Czech and 29500 for
  /// German; maxlen 50 for baseline and 100 for interleaved output;
  /// minlen 5 for German.
  static PipelineConfig defaults(PipelineMode mode);
  /// Longest raw target sentence, in words, admitted by maxlen.
  std::size_t word_limit() const;
  void validate() const;
};

struct ParallelCorpus {
  std::vector<std::string> source;
  std::vector<std::string> target;
  /// Optional per-token tags aligned with the source (for source-side
  /// balancing) and with the target (Czech positional tags or German
  /// parse tags used for disambiguation). Empty when not supplied.
  std::vector<std::string> source_tags;
  std::vector<std::string> target_tags;

  std::size_t size() const { return target.size(); }
  /// Throws std::invalid_argument unless all supplied sides align.
  void validate() const;
};

/// Keeps pairs whose target word count lies in [minlen, word_limit()],
/// then draws a seeded uniform sample of sample_size pairs (original order
/// preserved) when requested.
ParallelCorpus filter_corpus(const ParallelCorpus& corpus, const PipelineConfig& cfg);

struct SentenceDiagnostic {
  std::size_t line;
  std::string message;
};

struct PreparedCorpus {
  std::vector<std::string> source;
  std::vector<std::string> target;
  /// Target side before subword segmentation.
  std::vector<std::string> target_encoded;
  std::vector<std::size_t> kept_lines;
  std::vector<SentenceDiagnostic> dropped;
  MergeTable source_table;
  MergeTable target_table;
};

class AnalysisFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Tokens that BPE leaves whole when tag protection is on: positional
/// tags, feature sequences, bare words, and compound separators.
bool is_protected_tag(std::string_view token);

/// Builds the target representation for one sentence. Throws on analysis
/// failure (unknown surface, no compatible analysis, tag count mismatch).
std::vector<std::string> encode_target(std::string_view target, std::string_view target_tags, PipelineMode mode,
                                       const ParadigmLexicon& lex);
std::string prepare_source(std::string_view source, std::string_view source_tags, const PipelineConfig& cfg);

/// Encodes every sentence (dropping and counting the ones that fail
/// analysis), learns BPE on the prepared text and segments both sides.
/// When `table` is given it is used instead of learning.
PreparedCorpus prepare_variant(const ParallelCorpus& corpus, const PipelineConfig& cfg, const ParadigmLexicon& lex,
                               const MergeTable* table = nullptr);

class BackendFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A line-oriented translator process: reads prepared lines on stdin and
/// writes one line per input line on stdout. The command "identity" is
/// handled in-process.
struct Backend {
  std::string command = "identity";
};

std::vector<std::string> translate_external(std::span<const std::string> lines, const Backend& backend);

struct LineEvent {
  std::size_t line;
  RecoveryEvent event;
};

struct PostprocessResult {
  std::vector<std::string> lines;
  GenerationReport generation;
  WellformednessReport wellformedness;
  std::vector<LineEvent> recoveries;
  std::size_t dangling_markers = 0;
};

/// Per line: revert BPE, decode the interleaving (repairing malformed
/// output), merge compounds, and generate surfaces with lemma fallback.
/// Every input line yields exactly one output line.
PostprocessResult postprocess(std::span<const std::string> raw_lines, const PipelineConfig& cfg,
                              const ParadigmLexicon& lex);

/// Splits hyphenated words: "hydrogen-sulfide-rich" -> "hydrogen @-@ sulfide @-@ rich".
std::string split_hyphens(std::string_view line);

}  // namespace twostep
