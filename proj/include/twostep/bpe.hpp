// Byte-pair-encoding subword segmentation with "@@" continuation markers.
#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace twostep {

inline constexpr std::string_view kBpeMarker = "@@";

class DanglingMarker : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MergeTableParse : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Tokens for which the predicate holds are never segmented.
using TokenPredicate = std::function<bool(std::string_view)>;

struct SymbolPair {
  std::string left;
  std::string right;
  auto operator<=>(const SymbolPair&) const = default;
};

/// Ordered merge operations; a pair's rank is its position.
class MergeTable {
 public:
  MergeTable() = default;

  /// Returns false (and does nothing) for a pair already present.
  bool add(SymbolPair pair);
  std::optional<std::size_t> rank(std::string_view left, std::string_view right) const;

  std::size_t size() const { return merges_.size(); }
  bool empty() const { return merges_.empty(); }
  const std::vector<SymbolPair>& merges() const { return merges_; }
  const SymbolPair& operator[](std::size_t i) const { return merges_[i]; }

  /// The table restricted to its first k merges.
  MergeTable prefix(std::size_t k) const;

  /// One "left right" line per merge, in rank order.
  static MergeTable parse(std::string_view document);
  std::string str() const;

  bool operator==(const MergeTable& other) const { return merges_ == other.merges_; }

 private:
  static std::string key(std::string_view left, std::string_view right);

  std::vector<SymbolPair> merges_;
  std::unordered_map<std::string, std::size_t> rank_;
};

/// Learns up to num_merges merges from whitespace tokens. Each step merges
/// the most frequent adjacent symbol pair; equal counts go to the
/// lexicographically smallest (left, right). Learning stops early once no
/// word has two symbols left.
MergeTable learn_bpe(std::span<const std::string> tokens, std::size_t num_merges,
                     const TokenPredicate& is_protected = {});
MergeTable learn_bpe(const std::map<std::string, std::size_t>& word_counts, std::size_t num_merges);

/// Segments one token; every piece except the last carries "@@".
std::vector<std::string> apply_bpe(const MergeTable& table, std::string_view token,
                                   const TokenPredicate& is_protected = {});

/// Caching segmenter for whole sentences. Not thread-safe; use one per worker.
class BpeSegmenter {
 public:
  BpeSegmenter(const MergeTable& table, TokenPredicate is_protected = {})
      : table_(&table), protected_(std::move(is_protected)) {}

  const std::vector<std::string>& segment(const std::string& token);
  std::vector<std::string> segment_tokens(std::span<const std::string> tokens);
  std::string segment_line(std::string_view line);

 private:
  const MergeTable* table_;
  TokenPredicate protected_;
  std::unordered_map<std::string, std::vector<std::string>> cache_;
};

/// Joins "piz@@ zy" back into "pizzy". Throws DanglingMarker when the
/// last piece still carries a marker.
std::vector<std::string> revert_bpe(std::span<const std::string> subwords);
std::string revert_bpe_line(std::string_view line);

struct FragmentCount {
  std::string fragment;
  std::size_t frequency;
  bool operator==(const FragmentCount&) const = default;
};

/// Final pieces of split words in a segmented corpus, most frequent first,
/// ties in lexicographic order.
std::vector<FragmentCount> word_end_fragment_stats(std::span<const std::string> segmented_lines);

struct VocabRow {
  std::string name;
  std::size_t vocab_size;
  std::size_t vocab_size_bpe;
};

struct VocabReport {
  std::vector<VocabRow> rows;
  std::string to_text() const;
};

struct CorpusVariant {
  std::string name;
  std::vector<std::string> lines;
  MergeTable table;
};

std::size_t vocabulary_size(std::span<const std::string> lines);
VocabReport vocab_stats(std::span<const CorpusVariant> variants, const TokenPredicate& is_protected = {});

}  // namespace twostep
