#include "twostep/compounds.hpp"

#include "twostep/text.hpp"

namespace twostep {

namespace {

constexpr std::string_view kSeparatorMark = "§§";

std::string strip_markup(std::string_view token) {
  std::string out;
  for (const auto& seg : parse_stem(token)) out += seg.lexeme;
  return out;
}

bool is_lexeme_token(std::string_view token) {
  return !token.empty() && !is_compound_separator(token) && !is_tag_token(token, Mode::german_stemmed) &&
         !is_bare_token(token) && !is_bare_tag(token);
}

bool is_noun_head(const GermanFeatureSeq& features) {
  return features.kind == FeatureKind::nominal && (features.head() == "+NN" || features.head() == "+NPROP");
}

}  // namespace

bool is_compound_separator(std::string_view token) {
  if (token.size() < 2 * kSeparatorMark.size() + 3) return false;
  if (!token.starts_with(kSeparatorMark) || !token.ends_with(kSeparatorMark)) return false;
  const std::string_view markup = token.substr(kSeparatorMark.size(), token.size() - 2 * kSeparatorMark.size());
  return markup.front() == '<' && markup.back() == '>' && markup.find_first_of("<>", 1) == markup.size() - 1;
}

std::string make_separator(std::string_view markup) {
  return std::string(kSeparatorMark) + std::string(markup) + std::string(kSeparatorMark);
}

bool is_split_markup(std::string_view markup) { return markup == "<NN>" || markup == "<ADJ>"; }

std::vector<std::string> CompoundSplit::tokens() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < lexemes.size(); ++i) {
    if (i) out.push_back(make_separator(separators[i - 1]));
    out.push_back(lexemes[i]);
  }
  out.push_back(format_analysis(features));
  return out;
}

GermanAnalysis CompoundSplit::analysis() const {
  GermanAnalysis a;
  a.features = features;
  for (std::size_t i = 0; i < lexemes.size(); ++i) {
    auto segments = parse_stem(lexemes[i]);
    if (i < separators.size()) segments.back().markup += separators[i];
    a.stem.insert(a.stem.end(), segments.begin(), segments.end());
  }
  return a;
}

std::optional<CompoundSplit> split_compound(const GermanAnalysis& analysis) {
  if (!analysis.inflected) return std::nullopt;
  CompoundSplit split;
  split.features = analysis.features;
  std::string current;
  for (std::size_t i = 0; i < analysis.stem.size(); ++i) {
    const auto& seg = analysis.stem[i];
    const bool last = i + 1 == analysis.stem.size();
    if (!last && is_split_markup(seg.markup)) {
      current += seg.lexeme;
      split.lexemes.push_back(std::move(current));
      split.separators.push_back(seg.markup);
      current.clear();
    } else {
      current += seg.lexeme + seg.markup;
    }
  }
  split.lexemes.push_back(std::move(current));
  if (split.separators.empty()) return std::nullopt;
  return split;
}

std::vector<std::string> split_compounds_in_tokens(std::span<const std::string> tokens) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i + 1 < tokens.size() && is_lexeme_token(tokens[i]) && is_tag_token(tokens[i + 1], Mode::german_stemmed)) {
      try {
        GermanAnalysis a;
        a.stem = parse_stem(tokens[i]);
        a.features = parse_feature_seq(tokens[i + 1]);
        if (auto split = split_compound(a)) {
          auto pieces = split->tokens();
          out.insert(out.end(), pieces.begin(), pieces.end());
          ++i;
          continue;
        }
      } catch (const MalformedAnalysis&) {
      }
    }
    out.push_back(tokens[i]);
  }
  return out;
}

std::vector<std::string> join_split_tokens(std::span<const std::string> tokens, bool strict,
                                           std::vector<RecoveryEvent>* events) {
  std::vector<std::string> out;
  bool prev_lexeme = false;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (!is_compound_separator(tokens[i])) {
      out.push_back(tokens[i]);
      prev_lexeme = is_lexeme_token(tokens[i]);
      continue;
    }
    const bool next_lexeme = i + 1 < tokens.size() && is_lexeme_token(tokens[i + 1]);
    if (prev_lexeme && next_lexeme) {
      const std::string& sep = tokens[i];
      out.back() += sep.substr(kSeparatorMark.size(), sep.size() - 2 * kSeparatorMark.size()) + tokens[i + 1];
      ++i;
      continue;
    }
    const std::size_t position = prev_lexeme ? i + 1 : i;
    if (strict) throw WellformednessError(position, WellformednessKind::word_expected);
    if (events) events->push_back({position, WellformednessKind::word_expected, tokens[i]});
    prev_lexeme = false;
  }
  return out;
}

GermanAnalysis MergedCompound::analysis() const {
  GermanAnalysis a;
  a.stem = {{stem, ""}};
  a.features = features;
  return a;
}

std::string join_compound(std::string_view prefix, std::string_view head, bool noun) {
  if (prefix.empty()) return std::string(head);
  std::string out(prefix);
  out += prefix.ends_with('-') ? std::string(head) : lower_first(head);
  return noun ? upper_first(out) : lower_first(out);
}

MergedCompound merge_compound(const CompoundSplit& split, const ParadigmLexicon& lex, ModifierPolicy policy) {
  MergedCompound merged;
  merged.features = split.features;
  merged.head = split.lexemes.back();
  for (std::size_t i = 0; i + 1 < split.lexemes.size(); ++i) {
    const std::string& lexeme = split.lexemes[i];
    auto form = lex.modifier_form(lexeme);
    if (!form) form = lex.modifier_form(strip_markup(lexeme));
    if (!form) {
      if (policy == ModifierPolicy::strict) throw UnknownModifier(lexeme);
      merged.unknown_modifiers.push_back(lexeme);
      form = strip_markup(lexeme);
    }
    if (merged.prefix.empty() || merged.prefix.ends_with('-'))
      merged.prefix += *form;
    else
      merged.prefix += lower_first(*form);
  }
  merged.stem = join_compound(merged.prefix, strip_markup(merged.head), is_noun_head(split.features));
  return merged;
}

GenerationResult inflect_compound(const MergedCompound& compound, const ParadigmLexicon& lex) {
  GenerationResult head = generate(lex, compound.head, compound.features);
  if (auto* surface = std::get_if<std::string>(&head))
    return join_compound(compound.prefix, *surface, is_noun_head(compound.features));
  return head;
}

}  // namespace twostep
