#include "twostep/bpe.hpp"

#include <algorithm>
#include <cstdint>
#include <iomanip>
#include <set>
#include <sstream>
#include <unordered_set>

#include "twostep/text.hpp"

namespace twostep {

// ---------------------------------------------------------------------------
// MergeTable

std::string MergeTable::key(std::string_view left, std::string_view right) {
  std::string k(left);
  k.push_back(' ');
  k.append(right);
  return k;
}

bool MergeTable::add(SymbolPair pair) {
  auto [it, inserted] = rank_.emplace(key(pair.left, pair.right), merges_.size());
  if (!inserted) return false;
  merges_.push_back(std::move(pair));
  return true;
}

std::optional<std::size_t> MergeTable::rank(std::string_view left, std::string_view right) const {
  if (auto it = rank_.find(key(left, right)); it != rank_.end()) return it->second;
  return std::nullopt;
}

MergeTable MergeTable::prefix(std::size_t k) const {
  MergeTable t;
  for (std::size_t i = 0; i < std::min(k, merges_.size()); ++i) t.add(merges_[i]);
  return t;
}

MergeTable MergeTable::parse(std::string_view document) {
  MergeTable t;
  std::size_t line_no = 0;
  for (const auto& line : split_lines(document)) {
    ++line_no;
    if (line.empty() || line.starts_with("#version")) continue;
    const auto fields = split_tokens(line);
    if (fields.size() != 2) throw MergeTableParse("merge table line " + std::to_string(line_no) + ": expected 'left right'");
    if (!t.add({fields[0], fields[1]}))
      throw MergeTableParse("merge table line " + std::to_string(line_no) + ": duplicate pair");
  }
  return t;
}

std::string MergeTable::str() const {
  std::string out;
  for (const auto& p : merges_) out += p.left + " " + p.right + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Learning

namespace {

using PairId = std::uint64_t;

PairId pair_id(std::uint32_t left, std::uint32_t right) { return (PairId(left) << 32) | right; }
std::uint32_t left_of(PairId p) { return static_cast<std::uint32_t>(p >> 32); }
std::uint32_t right_of(PairId p) { return static_cast<std::uint32_t>(p & 0xFFFFFFFFu); }

class Learner {
 public:
  explicit Learner(const std::map<std::string, std::size_t>& word_counts)
      : queue_(QueueOrder{&symbols_}) {
    for (const auto& [word, count] : word_counts) {
      if (count == 0) continue;
      Word w;
      w.count = static_cast<std::int64_t>(count);
      for (const auto& ch : utf8_chars(word)) w.symbols.push_back(intern(ch));
      words_.push_back(std::move(w));
    }
    for (std::size_t wi = 0; wi < words_.size(); ++wi) add_pairs(wi);
    for (const auto& [p, c] : counts_)
      if (c > 0) queue_.insert({c, p});
  }

  MergeTable run(std::size_t num_merges) {
    MergeTable table;
    std::vector<std::uint32_t> visited(words_.size(), 0);
    for (std::uint32_t step = 1; table.size() < num_merges && !queue_.empty(); ++step) {
      const auto [count, best] = *queue_.begin();
      if (count <= 0) break;
      const std::uint32_t left = left_of(best);
      const std::uint32_t right = right_of(best);
      table.add({symbols_[left], symbols_[right]});
      const std::uint32_t merged = intern(symbols_[left] + symbols_[right]);

      touched_.clear();
      const std::vector<std::size_t> holders = std::move(where_[best]);
      where_.erase(best);
      for (std::size_t wi : holders) {
        if (visited[wi] == step) continue;
        visited[wi] = step;
        if (!contains(words_[wi].symbols, left, right)) continue;
        remove_pairs(wi);
        merge_word(words_[wi].symbols, left, right, merged);
        add_pairs(wi);
      }
      counts_.erase(best);
      touched_.erase(best);
      queue_.erase({count, best});
      for (PairId p : touched_) {
        auto it = counts_.find(p);
        if (it != counts_.end() && it->second > 0) queue_.insert({it->second, p});
      }
    }
    return table;
  }

 private:
  struct Word {
    std::vector<std::uint32_t> symbols;
    std::int64_t count = 0;
  };

  struct QueueOrder {
    const std::vector<std::string>* symbols;
    bool operator()(const std::pair<std::int64_t, PairId>& a, const std::pair<std::int64_t, PairId>& b) const {
      if (a.first != b.first) return a.first > b.first;
      const auto& s = *symbols;
      const std::string& al = s[left_of(a.second)];
      const std::string& bl = s[left_of(b.second)];
      if (al != bl) return al < bl;
      return s[right_of(a.second)] < s[right_of(b.second)];
    }
  };

  std::uint32_t intern(const std::string& sym) {
    auto [it, inserted] = ids_.emplace(sym, static_cast<std::uint32_t>(symbols_.size()));
    if (inserted) symbols_.push_back(sym);
    return it->second;
  }

  static bool contains(const std::vector<std::uint32_t>& s, std::uint32_t l, std::uint32_t r) {
    for (std::size_t i = 0; i + 1 < s.size(); ++i)
      if (s[i] == l && s[i + 1] == r) return true;
    return false;
  }

  static void merge_word(std::vector<std::uint32_t>& s, std::uint32_t l, std::uint32_t r, std::uint32_t m) {
    std::vector<std::uint32_t> out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size();) {
      if (i + 1 < s.size() && s[i] == l && s[i + 1] == r) {
        out.push_back(m);
        i += 2;
      } else {
        out.push_back(s[i++]);
      }
    }
    s = std::move(out);
  }

  // Before the first change to a pair's count in a step, its queue entry
  // is removed; the entry is re-inserted with the final count afterwards.
  void touch(PairId p) {
    if (touched_.insert(p).second) {
      if (auto it = counts_.find(p); it != counts_.end() && it->second > 0) queue_.erase({it->second, p});
    }
  }

  void add_pairs(std::size_t wi) {
    const auto& w = words_[wi];
    for (std::size_t i = 0; i + 1 < w.symbols.size(); ++i) {
      const PairId p = pair_id(w.symbols[i], w.symbols[i + 1]);
      touch(p);
      counts_[p] += w.count;
      where_[p].push_back(wi);
    }
  }

  void remove_pairs(std::size_t wi) {
    const auto& w = words_[wi];
    for (std::size_t i = 0; i + 1 < w.symbols.size(); ++i) {
      const PairId p = pair_id(w.symbols[i], w.symbols[i + 1]);
      touch(p);
      counts_[p] -= w.count;
    }
  }

  std::vector<std::string> symbols_;
  std::unordered_map<std::string, std::uint32_t> ids_;
  std::vector<Word> words_;
  std::unordered_map<PairId, std::int64_t> counts_;
  std::unordered_map<PairId, std::vector<std::size_t>> where_;
  std::set<std::pair<std::int64_t, PairId>, QueueOrder> queue_;
  std::unordered_set<PairId> touched_;
};

}  // namespace

MergeTable learn_bpe(const std::map<std::string, std::size_t>& word_counts, std::size_t num_merges) {
  if (num_merges == 0) return {};
  return Learner(word_counts).run(num_merges);
}

MergeTable learn_bpe(std::span<const std::string> tokens, std::size_t num_merges, const TokenPredicate& is_protected) {
  std::map<std::string, std::size_t> counts;
  for (const auto& t : tokens)
    if (!is_protected || !is_protected(t)) ++counts[t];
  return learn_bpe(counts, num_merges);
}

// ---------------------------------------------------------------------------
// Application

std::vector<std::string> apply_bpe(const MergeTable& table, std::string_view token, const TokenPredicate& is_protected) {
  if ((is_protected && is_protected(token)) || table.empty()) return {std::string(token)};
  std::vector<std::string> symbols = utf8_chars(token);
  while (symbols.size() > 1) {
    std::optional<std::size_t> best;
    std::size_t best_rank = 0;
    for (std::size_t i = 0; i + 1 < symbols.size(); ++i) {
      if (auto r = table.rank(symbols[i], symbols[i + 1]); r && (!best || *r < best_rank)) {
        best = i;
        best_rank = *r;
      }
    }
    if (!best) break;
    const SymbolPair& pair = table[best_rank];
    std::vector<std::string> merged;
    merged.reserve(symbols.size());
    for (std::size_t i = 0; i < symbols.size();) {
      if (i + 1 < symbols.size() && symbols[i] == pair.left && symbols[i + 1] == pair.right) {
        merged.push_back(symbols[i] + symbols[i + 1]);
        i += 2;
      } else {
        merged.push_back(std::move(symbols[i++]));
      }
    }
    symbols = std::move(merged);
  }
  for (std::size_t i = 0; i + 1 < symbols.size(); ++i) symbols[i].append(kBpeMarker);
  return symbols;
}

const std::vector<std::string>& BpeSegmenter::segment(const std::string& token) {
  auto it = cache_.find(token);
  if (it == cache_.end()) it = cache_.emplace(token, apply_bpe(*table_, token, protected_)).first;
  return it->second;
}

std::vector<std::string> BpeSegmenter::segment_tokens(std::span<const std::string> tokens) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) {
    const auto& pieces = segment(t);
    out.insert(out.end(), pieces.begin(), pieces.end());
  }
  return out;
}

std::string BpeSegmenter::segment_line(std::string_view line) {
  return join_tokens(segment_tokens(split_tokens(line)));
}

std::vector<std::string> revert_bpe(std::span<const std::string> subwords) {
  std::vector<std::string> out;
  std::string current;
  bool pending = false;
  for (const auto& piece : subwords) {
    if (std::string_view(piece).ends_with(kBpeMarker)) {
      current.append(piece, 0, piece.size() - kBpeMarker.size());
      pending = true;
    } else {
      current.append(piece);
      out.push_back(std::move(current));
      current.clear();
      pending = false;
    }
  }
  if (pending) throw DanglingMarker("segmented sequence ends with a continuation marker: '" + subwords.back() + "'");
  return out;
}

std::string revert_bpe_line(std::string_view line) { return join_tokens(revert_bpe(split_tokens(line))); }

// ---------------------------------------------------------------------------
// Statistics

std::vector<FragmentCount> word_end_fragment_stats(std::span<const std::string> segmented_lines) {
  std::map<std::string, std::size_t> counts;
  for (const auto& line : segmented_lines) {
    bool continued = false;
    for (const auto& piece : split_tokens(line)) {
      if (std::string_view(piece).ends_with(kBpeMarker)) {
        continued = true;
      } else {
        if (continued) ++counts[piece];
        continued = false;
      }
    }
  }
  std::vector<FragmentCount> out;
  for (const auto& [fragment, n] : counts) out.push_back({fragment, n});
  std::stable_sort(out.begin(), out.end(),
                   [](const FragmentCount& a, const FragmentCount& b) { return a.frequency > b.frequency; });
  return out;
}

std::size_t vocabulary_size(std::span<const std::string> lines) {
  std::unordered_set<std::string> vocab;
  for (const auto& line : lines)
    for (auto& t : split_tokens(line)) vocab.insert(std::move(t));
  return vocab.size();
}

VocabReport vocab_stats(std::span<const CorpusVariant> variants, const TokenPredicate& is_protected) {
  VocabReport report;
  for (const auto& v : variants) {
    BpeSegmenter segmenter(v.table, is_protected);
    std::unordered_set<std::string> after;
    for (const auto& line : v.lines)
      for (const auto& t : split_tokens(line))
        for (const auto& piece : segmenter.segment(t)) after.insert(piece);
    report.rows.push_back({v.name, vocabulary_size(v.lines), after.size()});
  }
  return report;
}

std::string VocabReport::to_text() const {
  std::size_t name_width = 0;
  for (const auto& r : rows) name_width = std::max(name_width, r.name.size());
  std::ostringstream out;
  out << std::left << std::setw(static_cast<int>(name_width)) << "" << " | " << std::right << std::setw(15)
      << "vocabulary size" << " " << std::setw(22) << "vocabulary size w/ BPE" << "\n";
  out << std::string(name_width, '-') << "-+-" << std::string(38, '-') << "\n";
  for (const auto& r : rows)
    out << std::left << std::setw(static_cast<int>(name_width)) << r.name << " | " << std::right << std::setw(15)
        << r.vocab_size << " " << std::setw(22) << r.vocab_size_bpe << "\n";
  return out.str();
}

}  // namespace twostep
