// Interleaved tag/word sentence representations and their decoder.
#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "twostep/morphlex.hpp"

namespace twostep {

enum class Mode { baseline, morphgen, serialization, german_stemmed };

std::string_view mode_name(Mode mode);
std::optional<Mode> mode_from_name(std::string_view name);

/// A target word with its selected analysis. The surface is needed by the
/// serialization and baseline modes.
struct AnalyzedWord {
  std::string surface;
  MorphAnalysis analysis;
};

struct TokenPair {
  std::string tag;   // empty in baseline mode
  std::string word;  // lemma, surface form or German stem depending on mode
  bool operator==(const TokenPair&) const = default;
};

enum class WellformednessKind { odd_length, tag_expected, word_expected };
std::string_view kind_name(WellformednessKind kind);

class WellformednessError : public std::runtime_error {
 public:
  WellformednessError(std::size_t position, WellformednessKind kind)
      : std::runtime_error(std::string(kind_name(kind)) + " at token " + std::to_string(position)),
        position_(position),
        kind_(kind) {}
  std::size_t position() const { return position_; }
  WellformednessKind kind() const { return kind_; }

 private:
  std::size_t position_;
  WellformednessKind kind_;
};

class LengthMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// True for tokens that occupy the tag slot in the given mode: Czech
/// positional tags, or German feature sequences.
bool is_tag_token(std::string_view token, Mode mode);
/// Bare German tokens such as "und[KON]" carry lexeme and tag in one token.
bool is_bare_token(std::string_view token);

struct InterleavedSentence {
  Mode mode = Mode::baseline;
  std::vector<std::string> tokens;

  std::vector<TokenPair> pairs() const;
  std::string str() const;
};

InterleavedSentence encode(std::span<const AnalyzedWord> words, Mode mode);

/// Strict decoder; also serves as the well-formedness checker.
std::vector<TokenPair> decode(std::span<const std::string> tokens, Mode mode);

/// An item of a repaired sentence: a (tag, word) pair, or a word without a
/// tag that is to be emitted verbatim.
struct DecodedItem {
  std::optional<std::string> tag;
  std::string word;
};

struct RecoveryEvent {
  std::size_t position;
  WellformednessKind kind;
  std::string token;
};

struct LenientDecode {
  std::vector<DecodedItem> items;
  std::vector<RecoveryEvent> events;
};

/// Decoder used on system output: a word without a tag is kept verbatim,
/// a tag without a word is dropped, and both are recorded as events.
LenientDecode decode_lenient(std::span<const std::string> tokens, Mode mode);

/// Source-side balancing: ["sees"], ["VBZ"] -> ["VBZ", "sees"].
std::vector<std::string> tag_source(std::span<const std::string> words, std::span<const std::string> tags);

}  // namespace twostep
