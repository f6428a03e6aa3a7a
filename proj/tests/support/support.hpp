// Shared helpers for the test programs: fixture paths and seeded synthetic
// languages whose lexicons cover every generated sentence.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "twostep/morphlex.hpp"

namespace testing {

std::string data_path(const std::string& name);
std::string read_file(const std::string& path);
twostep::ParadigmLexicon fixture_lexicon(const std::string& name);

struct SyntheticLanguage {
  std::string lexicon_tsv;
  twostep::ParadigmLexicon lexicon;
  std::vector<std::string> sentences;
  /// The same sentences in the fully specified stem+feature representation
  /// (German only), and the lemmas used to build them.
  std::vector<std::string> stemmed;
  std::vector<std::string> lemmas;
};

/// Nouns with seven cases in both numbers; every lemma has 14 forms.
SyntheticLanguage czech_language(std::uint64_t seed, std::size_t lemmas, std::size_t sentences);

/// Nouns, adjectives, verbs, function words and modifier+head compounds
/// whose modifiers carry linking elements.
SyntheticLanguage german_language(std::uint64_t seed, std::size_t lemmas, std::size_t sentences);

}  // namespace testing
