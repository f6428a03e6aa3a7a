// Czech positional tags and German stem+feature analyses.
//
// Both are exchanged as whitespace-free text tokens. Every parse function
// here is the byte-exact inverse of the matching format_analysis overload.
#pragma once

#include <array>
#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace twostep {

class MalformedTag : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MalformedAnalysis : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Czech

enum class CzechSlot : std::size_t {
  pos,
  subpos,
  gender,
  number,
  case_,
  possgender,
  possnumber,
  person,
  tense,
  grade,
  negation,
  voice,
  reserve1,
  reserve2,
  var,
};

inline constexpr std::size_t kCzechTagLength = 15;

std::string_view slot_name(CzechSlot slot);
std::optional<CzechSlot> slot_from_name(std::string_view name);

/// A 15-position Czech morphological tag. '-' marks an unset slot.
class PositionalTag {
 public:
  char operator[](CzechSlot slot) const { return slots_[static_cast<std::size_t>(slot)]; }
  char at(std::size_t i) const { return slots_.at(i); }
  bool is_set(CzechSlot slot) const { return (*this)[slot] != '-'; }

  char pos() const { return (*this)[CzechSlot::pos]; }
  char subpos() const { return (*this)[CzechSlot::subpos]; }
  char gender() const { return (*this)[CzechSlot::gender]; }
  char number() const { return (*this)[CzechSlot::number]; }
  char grammatical_case() const { return (*this)[CzechSlot::case_]; }
  char grade() const { return (*this)[CzechSlot::grade]; }
  char negation() const { return (*this)[CzechSlot::negation]; }

  std::string str() const { return std::string(slots_.begin(), slots_.end()); }

  auto operator<=>(const PositionalTag&) const = default;

 private:
  friend PositionalTag parse_czech_tag(std::string_view raw);
  std::array<char, kCzechTagLength> slots_{};
};

/// Tag characters are ASCII uppercase letters, digits and the punctuation
/// used by the positional tagset: ':' '-' '^' '#' '}' '=' '~' '*' '%' '?'.
bool is_czech_tag_char(char c);
bool is_czech_tag(std::string_view raw);
PositionalTag parse_czech_tag(std::string_view raw);
std::optional<PositionalTag> try_parse_czech_tag(std::string_view raw) noexcept;
std::string format_analysis(const PositionalTag& tag);

/// Optional per-position value sets for strict validation. Loaded from a
/// text file with one "slot-name values" line per constrained slot, e.g.
/// "pos ACDIJNPRTVXZ". Slots without a line accept any tag character.
class CzechTagAlphabet {
 public:
  static CzechTagAlphabet parse(std::string_view document);
  bool accepts(const PositionalTag& tag) const;
  /// Throws MalformedTag naming the first offending slot.
  void check(const PositionalTag& tag) const;

 private:
  std::array<std::string, kCzechTagLength> allowed_{};
};

// ---------------------------------------------------------------------------
// German

enum class FeatureKind { nominal, verbal_finite, participle, infinitive, bare };

std::string_view kind_name(FeatureKind kind);

/// The inflectional half of a German analysis: "<+NN><Fem><Acc><Sg><NA>",
/// "<+V><3><Sg><Pres><Ind>", "<+V><PPast>", "<+V><Inf>", or a bare parse
/// tag "[KON]". Values are stored without their brackets.
struct GermanFeatureSeq {
  FeatureKind kind = FeatureKind::bare;
  std::vector<std::string> values;

  std::string_view head() const { return values.front(); }
  /// Nominal sequences of adjectives may carry a degree after the head,
  /// as in "<+ADJ><Pos><NoGend><Dat><Sg><Wk>".
  std::optional<std::string_view> degree() const;
  std::string_view gender() const { return nominal_slot(0); }
  std::string_view grammatical_case() const { return nominal_slot(1); }
  std::string_view number() const;
  std::string_view strength() const { return nominal_slot(3); }
  std::string_view person() const { return values.at(1); }
  std::string_view tense() const { return values.at(3); }
  std::string_view mood() const { return values.at(4); }
  /// For bare sequences: the parse tag inside the brackets.
  std::string_view bare_tag() const { return values.front(); }

  bool operator==(const GermanFeatureSeq&) const = default;

 private:
  std::string_view nominal_slot(std::size_t i) const;
};

struct FeatureParseOptions {
  /// Raw analyzer output omits the strength slot when it is not
  /// distinctive; this inserts the <NA> placeholder instead of rejecting.
  bool complete_strength = false;
};

bool is_german_feature_seq(std::string_view raw);
bool is_bare_tag(std::string_view raw);
GermanFeatureSeq parse_feature_seq(std::string_view raw, FeatureParseOptions options = {});
std::string format_analysis(const GermanFeatureSeq& seq);

/// A lexeme plus the markup that follows it verbatim ("Meer" + "<NN>").
struct StemSegment {
  std::string lexeme;
  std::string markup;
  bool operator==(const StemSegment&) const = default;
};

enum class Boundary {
  double_pipe,  // "stem||<+NN>..."
  implicit,     // analyzer style "stem<+NN>..."
};

struct GermanAnalysis {
  std::vector<StemSegment> stem;
  GermanFeatureSeq features;
  bool inflected = true;
  Boundary boundary = Boundary::double_pipe;

  std::string stem_text() const;
  bool operator==(const GermanAnalysis&) const = default;
};

/// Splits "Meer<NN>Boden" into [(Meer,<NN>), (Boden,)].
std::vector<StemSegment> parse_stem(std::string_view stem);
std::string format_stem(const std::vector<StemSegment>& stem);

GermanAnalysis parse_german_analysis(std::string_view raw, FeatureParseOptions options = {});
std::string format_analysis(const GermanAnalysis& analysis);

}  // namespace twostep
