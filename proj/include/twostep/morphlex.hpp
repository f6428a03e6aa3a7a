// Paradigm lexicon: analysis (surface -> lemma+tag candidates),
// disambiguation against parse tags, and deterministic generation.
#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "twostep/tagsets.hpp"

namespace twostep {

class LexiconParse : public std::runtime_error {
 public:
  LexiconParse(std::size_t line, const std::string& what)
      : std::runtime_error("lexicon line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class LexiconConflict : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NoCompatibleAnalysis : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using MorphTag = std::variant<PositionalTag, GermanFeatureSeq>;

std::string format_tag(const MorphTag& tag);
/// Czech tags are tried first, then German feature sequences (with the
/// strength placeholder completed).
MorphTag parse_tag(std::string_view raw);

struct MorphAnalysis {
  std::string lemma;
  MorphTag tag;

  bool operator==(const MorphAnalysis&) const = default;
};

std::string format_analysis(const MorphAnalysis& a);

/// Canonical candidate order: formatted tag text, then lemma.
bool canonical_less(const MorphAnalysis& a, const MorphAnalysis& b);

class ParadigmLexicon {
 public:
  ParadigmLexicon() = default;

  /// Adds one paradigm cell. Throws LexiconConflict when (lemma, tag)
  /// already maps to a different surface.
  void add(const std::string& lemma, const MorphTag& tag, const std::string& surface);
  void add_modifier(const std::string& lemma, const std::string& in_compound_form);

  std::optional<std::string> lookup(std::string_view lemma, const MorphTag& tag) const;
  const std::vector<MorphAnalysis>& candidates(std::string_view surface) const;
  bool has_lemma(std::string_view lemma) const { return lemmas_.contains(std::string(lemma)); }
  std::optional<std::string> modifier_form(std::string_view lemma) const;

  std::size_t size() const { return forward_.size(); }
  bool empty() const { return forward_.empty(); }
  const std::map<std::string, std::string>& modifiers() const { return modifiers_; }

  /// Every (lemma, tag, surface) entry, ordered by lemma then tag text.
  std::vector<std::pair<MorphAnalysis, std::string>> entries() const;

 private:
  static std::string key(std::string_view lemma, std::string_view tag_text);

  std::unordered_map<std::string, std::string> forward_;
  std::unordered_map<std::string, std::vector<MorphAnalysis>> inverse_;
  std::set<std::string> lemmas_;
  std::map<std::string, std::string> modifiers_;
};

/// Lexicon TSV: "lemma<TAB>tag<TAB>surface" rows, '#' comments, and
/// "@mod<TAB>modifier<TAB>in-compound form" rows for the modifier table.
ParadigmLexicon load_lexicon(std::string_view document);
std::string write_lexicon(const ParadigmLexicon& lex);

std::vector<MorphAnalysis> analyze(const ParadigmLexicon& lex, std::string_view surface);

/// Parse-tag context such as "ADJA-Dat.Sg.Fem", "VVFIN-Sg", "KON", "$,"
/// or a full Czech positional tag.
struct ParseContext {
  std::string pos;
  std::optional<std::string> grammatical_case;
  std::optional<std::string> number;
  std::optional<std::string> gender;
  std::optional<PositionalTag> czech;
};

ParseContext parse_context(std::string_view context);
bool compatible(const MorphAnalysis& candidate, const ParseContext& context);

/// First candidate (in the given order) compatible with the context.
MorphAnalysis disambiguate(const std::vector<MorphAnalysis>& candidates, std::string_view context);

enum class FallbackReason { unknown_lemma, incompatible_tag };
std::string_view reason_name(FallbackReason reason);

struct GenerationFailure {
  FallbackReason reason;
};

using GenerationResult = std::variant<std::string, GenerationFailure>;

inline bool succeeded(const GenerationResult& r) { return std::holds_alternative<std::string>(r); }

GenerationResult generate(const ParadigmLexicon& lex, std::string_view lemma, const MorphTag& tag);

struct FallbackItem {
  std::string lemma;
  std::string tag;
  FallbackReason reason;
  bool operator==(const FallbackItem&) const = default;
};

struct GenerationReport {
  std::size_t total = 0;
  std::size_t fallbacks = 0;
  std::vector<FallbackItem> fallback_items;
  /// Compound modifiers missing from the modifier table; those compounds
  /// were joined from the raw lexemes.
  std::vector<std::string> unknown_modifiers;

  void record_success() { ++total; }
  void record_fallback(FallbackItem item);
  GenerationReport& operator+=(const GenerationReport& other);
  std::string to_text() const;
};

std::string generate_with_fallback(const ParadigmLexicon& lex, const std::string& lemma, const MorphTag& tag,
                                   GenerationReport& report);

}  // namespace twostep
