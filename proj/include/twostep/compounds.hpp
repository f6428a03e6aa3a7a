// German compound splitting ("Meer §§<NN>§§ Boden <+NN>...") and
// reassembly with linking elements taken from the lexicon's modifier table.
#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "twostep/interleave.hpp"
#include "twostep/morphlex.hpp"
#include "twostep/tagsets.hpp"

namespace twostep {

class UnknownModifier : public std::runtime_error {
 public:
  explicit UnknownModifier(const std::string& modifier)
      : std::runtime_error("modifier '" + modifier + "' missing from the modifier table"), modifier_(modifier) {}
  const std::string& modifier() const { return modifier_; }

 private:
  std::string modifier_;
};

/// Separator tokens look like "§§<NN>§§".
bool is_compound_separator(std::string_view token);
std::string make_separator(std::string_view markup);

/// Stem markups at which compounds are split.
bool is_split_markup(std::string_view markup);

struct CompoundSplit {
  /// Lexeme tokens, modifiers first; each may keep non-splitting markup
  /// (the head keeps e.g. "<Pos>").
  std::vector<std::string> lexemes;
  /// Markup of each modifier, one fewer than lexemes.
  std::vector<std::string> separators;
  GermanFeatureSeq features;

  std::vector<std::string> tokens() const;
  /// Reassembles the unsplit analysis, e.g. "Meer<NN>Boden||<+NN>...".
  GermanAnalysis analysis() const;
};

/// nullopt when the analysis has no splittable border.
std::optional<CompoundSplit> split_compound(const GermanAnalysis& analysis);

/// Rewrites a german-stemmed token sequence with every compound split.
std::vector<std::string> split_compounds_in_tokens(std::span<const std::string> tokens);

/// Inverse of split_compounds_in_tokens at the token level: joins
/// "Meer §§<NN>§§ Boden" back into the stem token "Meer<NN>Boden". Orphan
/// separators throw WellformednessError in strict mode and are dropped
/// (with an event) otherwise.
std::vector<std::string> join_split_tokens(std::span<const std::string> tokens, bool strict,
                                           std::vector<RecoveryEvent>* events = nullptr);

struct MergedCompound {
  /// Concatenated stem, e.g. "Meeresboden".
  std::string stem;
  /// In-compound modifier material preceding the head, e.g. "Meeres".
  std::string prefix;
  /// Head lemma as keyed in the lexicon, e.g. "Boden" or "reich<Pos>".
  std::string head;
  GermanFeatureSeq features;
  std::vector<std::string> unknown_modifiers;

  GermanAnalysis analysis() const;
};

enum class ModifierPolicy { degrade, strict };

/// Maps every modifier through the modifier table and concatenates. With
/// the degrade policy, unknown modifiers are joined as-is and listed in
/// unknown_modifiers; with strict they throw UnknownModifier.
MergedCompound merge_compound(const CompoundSplit& split, const ParadigmLexicon& lex,
                              ModifierPolicy policy = ModifierPolicy::degrade);

/// Inflects the head and attaches the modifier prefix: "Meeres" +
/// "boden" for <+NN><Masc><Dat><Sg><NA>.
GenerationResult inflect_compound(const MergedCompound& compound, const ParadigmLexicon& lex);

/// Joins a prefix and a head form with German compound casing: the head
/// loses its capital unless it follows a hyphen, and the word starts
/// upper-case only when the compound is a noun.
std::string join_compound(std::string_view prefix, std::string_view head, bool noun);

}  // namespace twostep
