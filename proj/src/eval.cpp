#include "twostep/eval.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "twostep/compounds.hpp"
#include "twostep/text.hpp"

namespace twostep {

namespace {

std::map<std::vector<std::string>, std::size_t> ngram_counts(const std::vector<std::string>& tokens, int n) {
  std::map<std::vector<std::string>, std::size_t> counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i)
    ++counts[std::vector<std::string>(tokens.begin() + i, tokens.begin() + i + n)];
  return counts;
}

std::vector<std::string> tokens_of(const std::string& line, bool lowercase) {
  return split_tokens(lowercase ? to_lower(line) : line);
}

}  // namespace

BleuStats& BleuStats::operator+=(const BleuStats& other) {
  for (std::size_t i = 0; i < matches.size(); ++i) {
    matches[i] += other.matches[i];
    totals[i] += other.totals[i];
  }
  hyp_length += other.hyp_length;
  ref_length += other.ref_length;
  return *this;
}

double BleuStats::score(bool smooth) const {
  if (hyp_length == 0) return 0.0;
  double log_sum = 0.0;
  for (std::size_t n = 0; n < matches.size(); ++n) {
    double m = static_cast<double>(matches[n]);
    double t = static_cast<double>(totals[n]);
    if (smooth && n > 0) {
      m += 1.0;
      t += 1.0;
    }
    if (m == 0.0 || t == 0.0) return 0.0;
    log_sum += std::log(m / t);
  }
  const double precision = std::exp(log_sum / static_cast<double>(matches.size()));
  const double bp = hyp_length >= ref_length
                        ? 1.0
                        : std::exp(1.0 - static_cast<double>(ref_length) / static_cast<double>(hyp_length));
  return 100.0 * bp * precision;
}

BleuStats sentence_bleu_stats(const std::vector<std::string>& hyp, const std::vector<std::string>& ref,
                              int max_order) {
  BleuStats stats(max_order);
  stats.hyp_length = hyp.size();
  stats.ref_length = ref.size();
  for (int n = 1; n <= max_order; ++n) {
    const auto h = ngram_counts(hyp, n);
    const auto r = ngram_counts(ref, n);
    for (const auto& [gram, count] : h) {
      stats.totals[n - 1] += count;
      if (auto it = r.find(gram); it != r.end()) stats.matches[n - 1] += std::min(count, it->second);
    }
  }
  return stats;
}

double bleu(std::span<const std::string> hypotheses, std::span<const std::string> references,
            const BleuOptions& options) {
  if (hypotheses.size() != references.size())
    throw std::invalid_argument("hypothesis and reference line counts differ: " + std::to_string(hypotheses.size()) +
                                " vs " + std::to_string(references.size()));
  if (hypotheses.empty()) throw EmptyCorpus("BLEU needs at least one sentence");
  BleuStats total(options.max_order);
  for (std::size_t i = 0; i < hypotheses.size(); ++i)
    total += sentence_bleu_stats(tokens_of(hypotheses[i], options.lowercase),
                                 tokens_of(references[i], options.lowercase), options.max_order);
  return total.score(options.smooth);
}

std::string format_bleu(double score) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", score);
  return buf;
}

// ---------------------------------------------------------------------------

std::unordered_set<std::string> build_vocabulary(std::span<const std::string> lines, bool lowercase) {
  std::unordered_set<std::string> vocab;
  for (const auto& line : lines)
    for (auto& t : tokens_of(line, lowercase)) vocab.insert(std::move(t));
  return vocab;
}

NovelFormReport novel_forms(std::span<const std::string> outputs, const std::unordered_set<std::string>& training_vocab,
                            std::span<const std::string> sources, std::span<const std::string> references,
                            const NovelFormOptions& options) {
  if (outputs.size() != sources.size() || outputs.size() != references.size())
    throw std::invalid_argument("outputs, sources and references must have equal line counts");
  NovelFormReport report;
  std::map<std::string, bool> types;
  for (std::size_t i = 0; i < outputs.size(); ++i) {
    const auto src = tokens_of(sources[i], options.lowercase);
    const auto ref = tokens_of(references[i], options.lowercase);
    const std::set<std::string> src_set(src.begin(), src.end());
    const std::set<std::string> ref_set(ref.begin(), ref.end());
    for (auto& token : tokens_of(outputs[i], options.lowercase)) {
      if (training_vocab.contains(token) || src_set.contains(token)) continue;
      const bool confirmed = ref_set.contains(token);
      ++report.novel_tokens;
      types[token] = types[token] || confirmed;
      report.items.push_back({std::move(token), i, confirmed});
    }
  }
  report.novel_types = types.size();
  for (const auto& [_, confirmed] : types) report.confirmed_by_reference += confirmed ? 1 : 0;
  return report;
}

std::string NovelFormReport::to_text() const {
  std::ostringstream out;
  out << "novel_tokens\t" << novel_tokens << "\n";
  out << "novel_types\t" << novel_types << "\n";
  out << "confirmed_by_reference\t" << confirmed_by_reference << "\n";
  for (const auto& item : items)
    out << "novel\t" << item.sentence + 1 << "\t" << item.token << "\t" << (item.confirmed ? "confirmed" : "-")
        << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------

std::map<WellformednessKind, std::size_t> WellformednessReport::counts() const {
  std::map<WellformednessKind, std::size_t> c;
  for (const auto& m : malformed) ++c[m.kind];
  return c;
}

std::string WellformednessReport::to_text() const {
  std::ostringstream out;
  out << "lines\t" << lines << "\n";
  out << "malformed_lines\t" << malformed.size() << "\n";
  const auto c = counts();
  for (auto kind : {WellformednessKind::odd_length, WellformednessKind::tag_expected, WellformednessKind::word_expected}) {
    auto it = c.find(kind);
    out << kind_name(kind) << "\t" << (it == c.end() ? 0 : it->second) << "\n";
  }
  for (const auto& m : malformed)
    out << "malformed\t" << m.line + 1 << "\t" << m.position << "\t" << kind_name(m.kind) << "\n";
  return out.str();
}

WellformednessReport wellformedness(std::span<const std::string> lines, Mode mode, bool split_compounds) {
  WellformednessReport report;
  report.lines = lines.size();
  for (std::size_t i = 0; i < lines.size(); ++i) {
    try {
      auto tokens = split_tokens(lines[i]);
      if (split_compounds) tokens = join_split_tokens(tokens, true);
      decode(tokens, mode);
    } catch (const WellformednessError& e) {
      report.malformed.push_back({i, e.position(), e.kind()});
    }
  }
  return report;
}

}  // namespace twostep
