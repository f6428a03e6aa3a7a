#include "twostep/tagsets.hpp"

#include <algorithm>

#include "twostep/text.hpp"

namespace twostep {

namespace {

constexpr std::array<std::string_view, kCzechTagLength> kSlotNames = {
    "pos",   "subpos",   "gender",   "number",   "case",     "possgender", "possnumber", "person",
    "tense", "grade",    "negation", "voice",    "reserve1", "reserve2",   "var",
};

bool one_of(std::string_view v, std::initializer_list<std::string_view> options) {
  return std::find(options.begin(), options.end(), v) != options.end();
}

bool is_gender(std::string_view v) { return one_of(v, {"Fem", "Masc", "Neut", "NoGend"}); }
bool is_case(std::string_view v) { return one_of(v, {"Nom", "Acc", "Dat", "Gen"}); }
bool is_number(std::string_view v) { return one_of(v, {"Sg", "Pl"}); }
bool is_strength(std::string_view v) { return one_of(v, {"St", "Wk", "NA"}); }
bool is_degree(std::string_view v) { return one_of(v, {"Pos", "Comp", "Sup"}); }

// Splits "<a><b><c>" into {a, b, c}. Returns false on anything else.
bool split_angle_groups(std::string_view raw, std::vector<std::string>& out) {
  out.clear();
  std::size_t i = 0;
  if (raw.empty()) return false;
  while (i < raw.size()) {
    if (raw[i] != '<') return false;
    const std::size_t close = raw.find('>', i + 1);
    if (close == std::string_view::npos) return false;
    const std::string_view inner = raw.substr(i + 1, close - i - 1);
    if (inner.empty() || inner.find('<') != std::string_view::npos) return false;
    out.emplace_back(inner);
    i = close + 1;
  }
  return true;
}

void check_nominal(const std::vector<std::string>& v, std::string_view raw) {
  const std::size_t off = (v.size() > 1 && is_degree(v[1])) ? 2 : 1;
  if (v.size() != off + 4)
    throw MalformedAnalysis("nominal feature sequence needs gender, case, number and strength: " +
                            std::string(raw));
  if (!is_gender(v[off])) throw MalformedAnalysis("bad gender '" + v[off] + "' in " + std::string(raw));
  if (!is_case(v[off + 1])) throw MalformedAnalysis("bad case '" + v[off + 1] + "' in " + std::string(raw));
  if (!is_number(v[off + 2]))
    throw MalformedAnalysis("bad number '" + v[off + 2] + "' in " + std::string(raw));
  if (!is_strength(v[off + 3]))
    throw MalformedAnalysis("bad strength '" + v[off + 3] + "' in " + std::string(raw));
}

}  // namespace

// ---------------------------------------------------------------------------
// Czech

std::string_view slot_name(CzechSlot slot) { return kSlotNames.at(static_cast<std::size_t>(slot)); }

std::optional<CzechSlot> slot_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kSlotNames.size(); ++i)
    if (kSlotNames[i] == name) return static_cast<CzechSlot>(i);
  return std::nullopt;
}

bool is_czech_tag_char(char c) {
  if ((c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9')) return true;
  return std::string_view(":-^#}=~*%?").find(c) != std::string_view::npos;
}

bool is_czech_tag(std::string_view raw) {
  return raw.size() == kCzechTagLength && std::all_of(raw.begin(), raw.end(), is_czech_tag_char);
}

PositionalTag parse_czech_tag(std::string_view raw) {
  if (raw.size() != kCzechTagLength)
    throw MalformedTag("positional tag must have 15 characters, got " + std::to_string(raw.size()) + ": '" +
                       std::string(raw) + "'");
  PositionalTag tag;
  for (std::size_t i = 0; i < kCzechTagLength; ++i) {
    if (!is_czech_tag_char(raw[i]))
      throw MalformedTag("illegal character in positional tag '" + std::string(raw) + "' at position " +
                         std::to_string(i));
    tag.slots_[i] = raw[i];
  }
  return tag;
}

std::optional<PositionalTag> try_parse_czech_tag(std::string_view raw) noexcept {
  if (!is_czech_tag(raw)) return std::nullopt;
  return parse_czech_tag(raw);
}

std::string format_analysis(const PositionalTag& tag) { return tag.str(); }

CzechTagAlphabet CzechTagAlphabet::parse(std::string_view document) {
  CzechTagAlphabet alphabet;
  for (const auto& line : split_lines(document)) {
    const auto fields = split_tokens(line);
    if (fields.empty() || fields[0].starts_with('#')) continue;
    const auto slot = slot_from_name(fields[0]);
    if (!slot || fields.size() != 2) throw MalformedTag("bad tag alphabet line: " + line);
    alphabet.allowed_[static_cast<std::size_t>(*slot)] = fields[1];
  }
  return alphabet;
}

bool CzechTagAlphabet::accepts(const PositionalTag& tag) const {
  for (std::size_t i = 0; i < kCzechTagLength; ++i)
    if (!allowed_[i].empty() && allowed_[i].find(tag.at(i)) == std::string::npos) return false;
  return true;
}

void CzechTagAlphabet::check(const PositionalTag& tag) const {
  for (std::size_t i = 0; i < kCzechTagLength; ++i)
    if (!allowed_[i].empty() && allowed_[i].find(tag.at(i)) == std::string::npos)
      throw MalformedTag("value '" + std::string(1, tag.at(i)) + "' not allowed in slot " +
                         std::string(kSlotNames[i]) + " of " + tag.str());
}

// ---------------------------------------------------------------------------
// German

std::string_view kind_name(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::nominal: return "nominal";
    case FeatureKind::verbal_finite: return "verbal-finite";
    case FeatureKind::participle: return "participle";
    case FeatureKind::infinitive: return "infinitive";
    case FeatureKind::bare: return "bare";
  }
  return "?";
}

std::optional<std::string_view> GermanFeatureSeq::degree() const {
  if (kind == FeatureKind::nominal && values.size() == 6) return values[1];
  return std::nullopt;
}

std::string_view GermanFeatureSeq::nominal_slot(std::size_t i) const {
  const std::size_t off = values.size() == 6 ? 2 : 1;
  return values.at(off + i);
}

std::string_view GermanFeatureSeq::number() const {
  if (kind == FeatureKind::verbal_finite) return values.at(2);
  return nominal_slot(2);
}

bool is_bare_tag(std::string_view raw) {
  return raw.size() >= 3 && raw.front() == '[' && raw.back() == ']' &&
         raw.find_first_of("[]", 1) == raw.size() - 1;
}

bool is_german_feature_seq(std::string_view raw) {
  try {
    parse_feature_seq(raw);
    return true;
  } catch (const MalformedAnalysis&) {
    return false;
  }
}

GermanFeatureSeq parse_feature_seq(std::string_view raw, FeatureParseOptions options) {
  GermanFeatureSeq seq;
  if (is_bare_tag(raw)) {
    seq.kind = FeatureKind::bare;
    seq.values.emplace_back(raw.substr(1, raw.size() - 2));
    return seq;
  }
  if (!split_angle_groups(raw, seq.values))
    throw MalformedAnalysis("unbalanced or empty feature brackets: '" + std::string(raw) + "'");
  auto& v = seq.values;
  if (v.front().size() < 2 || v.front()[0] != '+')
    throw MalformedAnalysis("feature sequence must start with a <+POS> head: '" + std::string(raw) + "'");

  if (v.front() == "+V") {
    if (v.size() == 2 && v[1] == "PPast") {
      seq.kind = FeatureKind::participle;
    } else if (v.size() == 2 && v[1] == "Inf") {
      seq.kind = FeatureKind::infinitive;
    } else if (v.size() == 5) {
      if (!one_of(v[1], {"1", "2", "3"}) || !is_number(v[2]) || !one_of(v[3], {"Pres", "Past"}) ||
          !one_of(v[4], {"Ind", "Subj"}))
        throw MalformedAnalysis("bad finite verb features: '" + std::string(raw) + "'");
      seq.kind = FeatureKind::verbal_finite;
    } else {
      throw MalformedAnalysis("unknown verbal feature sequence shape: '" + std::string(raw) + "'");
    }
    return seq;
  }

  seq.kind = FeatureKind::nominal;
  const std::size_t off = (v.size() > 1 && is_degree(v[1])) ? 2 : 1;
  if (options.complete_strength && v.size() == off + 3) v.emplace_back("NA");
  check_nominal(v, raw);
  return seq;
}

std::string format_analysis(const GermanFeatureSeq& seq) {
  std::string out;
  if (seq.kind == FeatureKind::bare) return "[" + seq.values.front() + "]";
  for (const auto& v : seq.values) out += "<" + v + ">";
  return out;
}

std::vector<StemSegment> parse_stem(std::string_view stem) {
  std::vector<StemSegment> segments;
  std::size_t i = 0;
  while (i < stem.size()) {
    StemSegment seg;
    const std::size_t lex_end = stem.find_first_of("<>", i);
    seg.lexeme = std::string(stem.substr(i, lex_end - i));
    if (seg.lexeme.empty()) throw MalformedAnalysis("empty lexeme in stem '" + std::string(stem) + "'");
    i = lex_end;
    while (i < stem.size() && stem[i] == '<') {
      const std::size_t close = stem.find('>', i + 1);
      if (close == std::string_view::npos || stem.substr(i + 1, close - i - 1).find('<') != std::string_view::npos ||
          close == i + 1)
        throw MalformedAnalysis("unbalanced markup in stem '" + std::string(stem) + "'");
      seg.markup.append(stem.substr(i, close - i + 1));
      i = close + 1;
    }
    if (i < stem.size() && stem[i] == '>')
      throw MalformedAnalysis("unbalanced markup in stem '" + std::string(stem) + "'");
    segments.push_back(std::move(seg));
  }
  if (segments.empty()) throw MalformedAnalysis("empty stem");
  return segments;
}

std::string format_stem(const std::vector<StemSegment>& stem) {
  std::string out;
  for (const auto& seg : stem) out += seg.lexeme + seg.markup;
  return out;
}

std::string GermanAnalysis::stem_text() const { return format_stem(stem); }

GermanAnalysis parse_german_analysis(std::string_view raw, FeatureParseOptions options) {
  GermanAnalysis a;
  if (const std::size_t pipe = raw.find("||"); pipe != std::string_view::npos) {
    a.boundary = Boundary::double_pipe;
    a.stem = parse_stem(raw.substr(0, pipe));
    a.features = parse_feature_seq(raw.substr(pipe + 2), options);
    if (a.features.kind == FeatureKind::bare)
      throw MalformedAnalysis("bare tag after || boundary: '" + std::string(raw) + "'");
    return a;
  }
  if (!raw.empty() && raw.back() == ']') {
    const std::size_t open = raw.rfind('[');
    if (open == std::string_view::npos || open == 0)
      throw MalformedAnalysis("unbalanced bare tag: '" + std::string(raw) + "'");
    a.features = parse_feature_seq(raw.substr(open), options);
    a.stem = parse_stem(raw.substr(0, open));
    if (a.stem.size() != 1 || !a.stem.front().markup.empty())
      throw MalformedAnalysis("non-inflected analysis must be a single plain lexeme: '" + std::string(raw) + "'");
    a.inflected = false;
    return a;
  }
  if (const std::size_t head = raw.find("<+"); head != std::string_view::npos && head > 0) {
    a.boundary = Boundary::implicit;
    a.stem = parse_stem(raw.substr(0, head));
    a.features = parse_feature_seq(raw.substr(head), options);
    return a;
  }
  throw MalformedAnalysis("unknown analysis shape: '" + std::string(raw) + "'");
}

std::string format_analysis(const GermanAnalysis& a) {
  if (!a.inflected) return a.stem_text() + format_analysis(a.features);
  return a.stem_text() + (a.boundary == Boundary::double_pipe ? "||" : "") + format_analysis(a.features);
}

}  // namespace twostep
