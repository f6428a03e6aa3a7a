#include "twostep/interleave.hpp"

#include "twostep/text.hpp"

namespace twostep {

namespace {

bool is_german_stem_token(std::string_view token) {
  if (token.empty() || is_bare_token(token) || is_bare_tag(token) || token.starts_with("<")) return false;
  try {
    parse_stem(token);
    return true;
  } catch (const MalformedAnalysis&) {
    return false;
  }
}

TokenPair split_bare(std::string_view token) {
  const std::size_t open = token.rfind('[');
  return {std::string(token.substr(open)), std::string(token.substr(0, open))};
}

}  // namespace

std::string_view mode_name(Mode mode) {
  switch (mode) {
    case Mode::baseline: return "baseline";
    case Mode::morphgen: return "morphgen";
    case Mode::serialization: return "serialization";
    case Mode::german_stemmed: return "german-stemmed";
  }
  return "?";
}

std::optional<Mode> mode_from_name(std::string_view name) {
  for (Mode m : {Mode::baseline, Mode::morphgen, Mode::serialization, Mode::german_stemmed})
    if (mode_name(m) == name) return m;
  return std::nullopt;
}

std::string_view kind_name(WellformednessKind kind) {
  switch (kind) {
    case WellformednessKind::odd_length: return "odd-length";
    case WellformednessKind::tag_expected: return "tag-expected";
    case WellformednessKind::word_expected: return "word-expected";
  }
  return "?";
}

bool is_bare_token(std::string_view token) {
  if (token.size() < 4 || token.back() != ']') return false;
  const std::size_t open = token.rfind('[');
  return open != std::string_view::npos && open > 0 && is_bare_tag(token.substr(open));
}

bool is_tag_token(std::string_view token, Mode mode) {
  switch (mode) {
    case Mode::baseline: return false;
    case Mode::morphgen:
    case Mode::serialization: return is_czech_tag(token);
    case Mode::german_stemmed: return token.starts_with("<+") && is_german_feature_seq(token);
  }
  return false;
}

std::vector<TokenPair> InterleavedSentence::pairs() const { return decode(tokens, mode); }

std::string InterleavedSentence::str() const { return join_tokens(tokens); }

InterleavedSentence encode(std::span<const AnalyzedWord> words, Mode mode) {
  InterleavedSentence s;
  s.mode = mode;
  for (const auto& w : words) {
    switch (mode) {
      case Mode::baseline:
        s.tokens.push_back(w.surface);
        break;
      case Mode::morphgen:
        s.tokens.push_back(format_tag(w.analysis.tag));
        s.tokens.push_back(w.analysis.lemma);
        break;
      case Mode::serialization:
        s.tokens.push_back(format_tag(w.analysis.tag));
        s.tokens.push_back(w.surface);
        break;
      case Mode::german_stemmed: {
        const auto* seq = std::get_if<GermanFeatureSeq>(&w.analysis.tag);
        if (seq && seq->kind == FeatureKind::bare) {
          s.tokens.push_back(w.analysis.lemma + format_analysis(*seq));
        } else {
          s.tokens.push_back(w.analysis.lemma);
          s.tokens.push_back(format_tag(w.analysis.tag));
        }
        break;
      }
    }
  }
  return s;
}

std::vector<TokenPair> decode(std::span<const std::string> tokens, Mode mode) {
  std::vector<TokenPair> pairs;
  switch (mode) {
    case Mode::baseline:
      for (const auto& t : tokens) pairs.push_back({"", t});
      return pairs;

    case Mode::morphgen:
    case Mode::serialization:
      if (tokens.size() % 2 != 0) throw WellformednessError(tokens.size(), WellformednessKind::odd_length);
      for (std::size_t i = 0; i < tokens.size(); i += 2) {
        if (!is_tag_token(tokens[i], mode)) throw WellformednessError(i, WellformednessKind::tag_expected);
        if (is_tag_token(tokens[i + 1], mode)) throw WellformednessError(i + 1, WellformednessKind::word_expected);
        pairs.push_back({tokens[i], tokens[i + 1]});
      }
      return pairs;

    case Mode::german_stemmed:
      for (std::size_t i = 0; i < tokens.size();) {
        if (is_bare_token(tokens[i])) {
          pairs.push_back(split_bare(tokens[i]));
          ++i;
          continue;
        }
        if (!is_german_stem_token(tokens[i])) throw WellformednessError(i, WellformednessKind::word_expected);
        if (i + 1 >= tokens.size() || !is_tag_token(tokens[i + 1], mode))
          throw WellformednessError(i + 1, WellformednessKind::tag_expected);
        pairs.push_back({tokens[i + 1], tokens[i]});
        i += 2;
      }
      return pairs;
  }
  return pairs;
}

LenientDecode decode_lenient(std::span<const std::string> tokens, Mode mode) {
  LenientDecode out;
  const std::size_t n = tokens.size();
  switch (mode) {
    case Mode::baseline:
      for (const auto& t : tokens) out.items.push_back({std::nullopt, t});
      return out;

    case Mode::morphgen:
    case Mode::serialization:
      for (std::size_t i = 0; i < n;) {
        if (is_tag_token(tokens[i], mode)) {
          if (i + 1 < n && !is_tag_token(tokens[i + 1], mode)) {
            out.items.push_back({tokens[i], tokens[i + 1]});
            i += 2;
          } else {
            out.events.push_back({i + 1, WellformednessKind::word_expected, tokens[i]});
            ++i;
          }
        } else {
          out.events.push_back({i, WellformednessKind::tag_expected, tokens[i]});
          out.items.push_back({std::nullopt, tokens[i]});
          ++i;
        }
      }
      return out;

    case Mode::german_stemmed:
      for (std::size_t i = 0; i < n;) {
        if (is_bare_token(tokens[i])) {
          auto p = split_bare(tokens[i]);
          out.items.push_back({std::move(p.tag), std::move(p.word)});
          ++i;
        } else if (is_tag_token(tokens[i], mode) || is_bare_tag(tokens[i])) {
          out.events.push_back({i, WellformednessKind::word_expected, tokens[i]});
          ++i;
        } else if (i + 1 < n && is_tag_token(tokens[i + 1], mode) && is_german_stem_token(tokens[i])) {
          out.items.push_back({tokens[i + 1], tokens[i]});
          i += 2;
        } else {
          out.events.push_back({i + 1, WellformednessKind::tag_expected, tokens[i]});
          out.items.push_back({std::nullopt, tokens[i]});
          ++i;
        }
      }
      return out;
  }
  return out;
}

std::vector<std::string> tag_source(std::span<const std::string> words, std::span<const std::string> tags) {
  if (words.size() != tags.size())
    throw LengthMismatch("source words and tags differ in length: " + std::to_string(words.size()) + " vs " +
                         std::to_string(tags.size()));
  std::vector<std::string> out;
  out.reserve(2 * words.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    out.push_back(tags[i]);
    out.push_back(words[i]);
  }
  return out;
}

}  // namespace twostep
