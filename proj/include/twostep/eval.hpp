// Corpus BLEU, novel-form counting and output well-formedness.
#pragma once

#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "twostep/interleave.hpp"

namespace twostep {

class EmptyCorpus : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BleuOptions {
  bool lowercase = false;
  /// Add-one smoothing of the n-gram precisions for n > 1.
  bool smooth = false;
  int max_order = 4;
};

/// Sufficient statistics; these add up across sentences.
struct BleuStats {
  std::vector<std::size_t> matches;
  std::vector<std::size_t> totals;
  std::size_t hyp_length = 0;
  std::size_t ref_length = 0;

  explicit BleuStats(int max_order = 4) : matches(max_order, 0), totals(max_order, 0) {}
  BleuStats& operator+=(const BleuStats& other);
  double score(bool smooth = false) const;
};

BleuStats sentence_bleu_stats(const std::vector<std::string>& hyp, const std::vector<std::string>& ref,
                              int max_order = 4);

/// Corpus BLEU-4 in [0, 100] with a brevity penalty.
double bleu(std::span<const std::string> hypotheses, std::span<const std::string> references,
            const BleuOptions& options = {});

std::string format_bleu(double score);

struct NovelItem {
  std::string token;
  std::size_t sentence;
  bool confirmed;
  bool operator==(const NovelItem&) const = default;
};

struct NovelFormReport {
  std::size_t novel_tokens = 0;
  std::size_t novel_types = 0;
  std::size_t confirmed_by_reference = 0;
  std::vector<NovelItem> items;

  std::string to_text() const;
};

struct NovelFormOptions {
  bool lowercase = false;
};

std::unordered_set<std::string> build_vocabulary(std::span<const std::string> lines, bool lowercase = false);

/// A token is novel when it is neither in the training target vocabulary
/// nor in its own source sentence; it is confirmed when it occurs in the
/// aligned reference. Types are counted over distinct novel tokens, and a
/// type is confirmed if any of its occurrences is.
NovelFormReport novel_forms(std::span<const std::string> outputs, const std::unordered_set<std::string>& training_vocab,
                            std::span<const std::string> sources, std::span<const std::string> references,
                            const NovelFormOptions& options = {});

struct MalformedLine {
  std::size_t line;
  std::size_t position;
  WellformednessKind kind;
};

struct WellformednessReport {
  std::size_t lines = 0;
  std::vector<MalformedLine> malformed;

  std::map<WellformednessKind, std::size_t> counts() const;
  std::string to_text() const;
};

/// Runs the strict decoder on every line. With split_compounds, compound
/// separators are joined before decoding.
WellformednessReport wellformedness(std::span<const std::string> lines, Mode mode, bool split_compounds = false);

}  // namespace twostep
