#include "twostep/morphlex.hpp"

#include <algorithm>
#include <sstream>

#include "twostep/text.hpp"

namespace twostep {

namespace {

std::vector<std::string> split_tabs(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    fields.emplace_back(line.substr(start, tab == std::string_view::npos ? std::string_view::npos : tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return fields;
}

// Head tag expected for an inflecting parse-tag POS; empty when the POS
// does not constrain the head.
std::string_view expected_head(std::string_view pos) {
  if (pos == "NN") return "+NN";
  if (pos == "NE") return "+NPROP";
  if (pos == "ADJA" || pos == "ADJD") return "+ADJ";
  if (pos == "ART") return "+ART";
  if (pos.starts_with('V')) return "+V";
  return {};
}

bool head_matches(std::string_view expected, std::string_view head) {
  if (expected.empty()) return true;
  if (expected == "+NPROP") return head == "+NPROP" || head == "+NN";
  return head == expected;
}

}  // namespace

std::string format_tag(const MorphTag& tag) {
  return std::visit([](const auto& t) { return format_analysis(t); }, tag);
}

MorphTag parse_tag(std::string_view raw) {
  if (auto czech = try_parse_czech_tag(raw)) return *czech;
  if (raw.size() == kCzechTagLength && raw.find_first_of("<[") == std::string_view::npos)
    return parse_czech_tag(raw);  // throws with the offending position
  return parse_feature_seq(raw, {.complete_strength = true});
}

std::string format_analysis(const MorphAnalysis& a) {
  if (const auto* g = std::get_if<GermanFeatureSeq>(&a.tag); g && g->kind == FeatureKind::bare)
    return a.lemma + format_analysis(*g);
  if (std::holds_alternative<GermanFeatureSeq>(a.tag)) return a.lemma + "||" + format_tag(a.tag);
  return format_tag(a.tag) + " " + a.lemma;
}

bool canonical_less(const MorphAnalysis& a, const MorphAnalysis& b) {
  const std::string ta = format_tag(a.tag);
  const std::string tb = format_tag(b.tag);
  if (ta != tb) return ta < tb;
  return a.lemma < b.lemma;
}

// ---------------------------------------------------------------------------
// ParadigmLexicon

std::string ParadigmLexicon::key(std::string_view lemma, std::string_view tag_text) {
  std::string k(lemma);
  k.push_back('\t');
  k.append(tag_text);
  return k;
}

void ParadigmLexicon::add(const std::string& lemma, const MorphTag& tag, const std::string& surface) {
  const std::string tag_text = format_tag(tag);
  const std::string k = key(lemma, tag_text);
  if (auto it = forward_.find(k); it != forward_.end()) {
    if (it->second != surface)
      throw LexiconConflict("conflicting surfaces '" + it->second + "' and '" + surface + "' for " + lemma + " " +
                            tag_text);
    return;
  }
  forward_.emplace(k, surface);
  auto& list = inverse_[surface];
  MorphAnalysis a{lemma, tag};
  list.insert(std::upper_bound(list.begin(), list.end(), a, canonical_less), std::move(a));
  lemmas_.insert(lemma);
}

void ParadigmLexicon::add_modifier(const std::string& lemma, const std::string& in_compound_form) {
  if (auto it = modifiers_.find(lemma); it != modifiers_.end() && it->second != in_compound_form)
    throw LexiconConflict("conflicting modifier forms '" + it->second + "' and '" + in_compound_form + "' for " +
                          lemma);
  modifiers_[lemma] = in_compound_form;
}

std::optional<std::string> ParadigmLexicon::lookup(std::string_view lemma, const MorphTag& tag) const {
  if (auto it = forward_.find(key(lemma, format_tag(tag))); it != forward_.end()) return it->second;
  return std::nullopt;
}

const std::vector<MorphAnalysis>& ParadigmLexicon::candidates(std::string_view surface) const {
  static const std::vector<MorphAnalysis> kNone;
  if (auto it = inverse_.find(std::string(surface)); it != inverse_.end()) return it->second;
  return kNone;
}

std::optional<std::string> ParadigmLexicon::modifier_form(std::string_view lemma) const {
  if (auto it = modifiers_.find(std::string(lemma)); it != modifiers_.end()) return it->second;
  return std::nullopt;
}

std::vector<std::pair<MorphAnalysis, std::string>> ParadigmLexicon::entries() const {
  std::vector<std::pair<MorphAnalysis, std::string>> out;
  out.reserve(forward_.size());
  for (const auto& [surface, list] : inverse_)
    for (const auto& a : list) out.emplace_back(a, surface);
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (x.first.lemma != y.first.lemma) return x.first.lemma < y.first.lemma;
    return format_tag(x.first.tag) < format_tag(y.first.tag);
  });
  return out;
}

ParadigmLexicon load_lexicon(std::string_view document) {
  ParadigmLexicon lex;
  std::size_t line_no = 0;
  for (const auto& line : split_lines(document)) {
    ++line_no;
    if (line.empty() || line.starts_with('#')) continue;
    const auto fields = split_tabs(line);
    if (fields[0] == "@mod") {
      if (fields.size() != 3 || fields[1].empty() || fields[2].empty())
        throw LexiconParse(line_no, "modifier rows need '@mod<TAB>modifier<TAB>form'");
      lex.add_modifier(fields[1], fields[2]);
      continue;
    }
    if (fields.size() != 3) throw LexiconParse(line_no, "expected 3 tab-separated columns");
    if (fields[0].empty() || fields[2].empty()) throw LexiconParse(line_no, "empty lemma or surface");
    MorphTag tag;
    try {
      tag = parse_tag(fields[1]);
    } catch (const std::exception& e) {
      throw LexiconParse(line_no, e.what());
    }
    try {
      lex.add(fields[0], tag, fields[2]);
    } catch (const LexiconConflict& e) {
      throw LexiconConflict("lexicon line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return lex;
}

std::string write_lexicon(const ParadigmLexicon& lex) {
  std::string out;
  for (const auto& [a, surface] : lex.entries()) out += a.lemma + "\t" + format_tag(a.tag) + "\t" + surface + "\n";
  for (const auto& [mod, form] : lex.modifiers()) out += "@mod\t" + mod + "\t" + form + "\n";
  return out;
}

std::vector<MorphAnalysis> analyze(const ParadigmLexicon& lex, std::string_view surface) {
  return lex.candidates(surface);
}

// ---------------------------------------------------------------------------
// Disambiguation

ParseContext parse_context(std::string_view context) {
  ParseContext ctx;
  if (auto czech = try_parse_czech_tag(context)) {
    ctx.czech = *czech;
    ctx.pos = std::string(1, czech->pos());
    return ctx;
  }
  const std::size_t dash = context.find('-');
  // A leading or trailing dash belongs to the POS itself ("$-" style tags).
  if (dash == std::string_view::npos || dash == 0 || dash + 1 == context.size()) {
    ctx.pos = std::string(context);
    return ctx;
  }
  ctx.pos = std::string(context.substr(0, dash));
  std::string_view rest = context.substr(dash + 1);
  while (!rest.empty()) {
    const std::size_t dot = rest.find('.');
    const std::string value(rest.substr(0, dot));
    if (value == "Nom" || value == "Acc" || value == "Dat" || value == "Gen") ctx.grammatical_case = value;
    else if (value == "Sg" || value == "Pl") ctx.number = value;
    else if (value == "Fem" || value == "Masc" || value == "Neut") ctx.gender = value;
    rest = dot == std::string_view::npos ? std::string_view{} : rest.substr(dot + 1);
  }
  return ctx;
}

bool compatible(const MorphAnalysis& candidate, const ParseContext& ctx) {
  if (const auto* czech = std::get_if<PositionalTag>(&candidate.tag)) return ctx.czech && *ctx.czech == *czech;
  if (ctx.czech) return false;

  const auto& seq = std::get<GermanFeatureSeq>(candidate.tag);
  if (seq.kind == FeatureKind::bare) {
    const std::string_view tag = seq.bare_tag();
    const std::size_t dash = tag.find('-');
    const std::string_view pos = tag.substr(0, dash);
    if (!std::string_view(ctx.pos).starts_with(pos)) return false;
    if (dash != std::string_view::npos && ctx.grammatical_case && tag.substr(dash + 1) != *ctx.grammatical_case)
      return false;
    return true;
  }

  if (!head_matches(expected_head(ctx.pos), seq.head())) return false;
  switch (seq.kind) {
    case FeatureKind::nominal:
      if (ctx.grammatical_case && seq.grammatical_case() != *ctx.grammatical_case) return false;
      if (ctx.number && seq.number() != *ctx.number) return false;
      if (ctx.gender && seq.gender() != "NoGend" && seq.gender() != *ctx.gender) return false;
      return true;
    case FeatureKind::verbal_finite:
      return !ctx.number || seq.number() == *ctx.number;
    default:
      return true;
  }
}

MorphAnalysis disambiguate(const std::vector<MorphAnalysis>& candidates, std::string_view context) {
  const ParseContext ctx = parse_context(context);
  for (const auto& c : candidates)
    if (compatible(c, ctx)) return c;
  throw NoCompatibleAnalysis("no analysis among " + std::to_string(candidates.size()) +
                             " candidates is compatible with context '" + std::string(context) + "'");
}

// ---------------------------------------------------------------------------
// Generation

std::string_view reason_name(FallbackReason reason) {
  return reason == FallbackReason::unknown_lemma ? "unknown-lemma" : "incompatible-tag";
}

GenerationResult generate(const ParadigmLexicon& lex, std::string_view lemma, const MorphTag& tag) {
  if (auto surface = lex.lookup(lemma, tag)) return *surface;
  return GenerationFailure{lex.has_lemma(lemma) ? FallbackReason::incompatible_tag : FallbackReason::unknown_lemma};
}

void GenerationReport::record_fallback(FallbackItem item) {
  ++total;
  ++fallbacks;
  fallback_items.push_back(std::move(item));
}

GenerationReport& GenerationReport::operator+=(const GenerationReport& other) {
  total += other.total;
  fallbacks += other.fallbacks;
  fallback_items.insert(fallback_items.end(), other.fallback_items.begin(), other.fallback_items.end());
  unknown_modifiers.insert(unknown_modifiers.end(), other.unknown_modifiers.begin(), other.unknown_modifiers.end());
  return *this;
}

std::string GenerationReport::to_text() const {
  std::ostringstream out;
  out << "generated_total\t" << total << "\n";
  out << "fallbacks\t" << fallbacks << "\n";
  out << "unknown_modifiers\t" << unknown_modifiers.size() << "\n";
  for (const auto& item : fallback_items)
    out << "fallback\t" << item.lemma << "\t" << item.tag << "\t" << reason_name(item.reason) << "\n";
  for (const auto& m : unknown_modifiers) out << "unknown-modifier\t" << m << "\n";
  return out.str();
}

std::string generate_with_fallback(const ParadigmLexicon& lex, const std::string& lemma, const MorphTag& tag,
                                   GenerationReport& report) {
  auto result = generate(lex, lemma, tag);
  if (auto* surface = std::get_if<std::string>(&result)) {
    report.record_success();
    return std::move(*surface);
  }
  report.record_fallback({lemma, format_tag(tag), std::get<GenerationFailure>(result).reason});
  return lemma;
}

}  // namespace twostep
