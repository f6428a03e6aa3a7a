#include "support.hpp"

#include <array>
#include <fstream>
#include <iterator>
#include <random>
#include <set>
#include <stdexcept>

#include "twostep/compounds.hpp"
#include "twostep/text.hpp"

namespace testing {

std::string data_path(const std::string& name) { return std::string(TWOSTEP_TEST_DATA) + "/" + name; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

twostep::ParadigmLexicon fixture_lexicon(const std::string& name) {
  return twostep::load_lexicon(read_file(data_path(name)));
}

namespace {

// Every stem is consonant-vowel-consonant-vowel-consonant, so a surface
// decomposes uniquely into stem and suffix.
class StemPool {
 public:
  explicit StemPool(std::uint64_t seed) : rng_(seed) {}

  std::string next() {
    static constexpr std::string_view consonants = "bdfgklmnprstvz";
    static constexpr std::string_view vowels = "aeiou";
    for (;;) {
      std::string s;
      for (int i = 0; i < 5; ++i) {
        const auto& set = (i % 2 == 0) ? consonants : vowels;
        s += set[std::uniform_int_distribution<std::size_t>(0, set.size() - 1)(rng_)];
      }
      if (used_.insert(s).second) return s;
    }
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
  std::set<std::string> used_;
};

std::size_t pick(std::mt19937_64& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

struct Cell {
  std::string lemma;
  std::string tag;
  std::string surface;
};

void add_cell(SyntheticLanguage& lang, std::vector<Cell>& cells, Cell cell) {
  lang.lexicon_tsv += cell.lemma + "\t" + cell.tag + "\t" + cell.surface + "\n";
  cells.push_back(std::move(cell));
}

}  // namespace

SyntheticLanguage czech_language(std::uint64_t seed, std::size_t lemmas, std::size_t sentences) {
  static constexpr std::array<std::string_view, 7> singular{"a", "y", "ě", "u", "o", "ě", "ou"};
  static constexpr std::array<std::string_view, 7> plural{"y", "", "ám", "y", "y", "ách", "ami"};
  SyntheticLanguage lang;
  StemPool pool(seed);
  std::vector<std::vector<Cell>> paradigms;
  for (std::size_t l = 0; l < lemmas; ++l) {
    const std::string stem = pool.next();
    lang.lemmas.push_back(stem + "a");
    std::vector<Cell> cells;
    for (int number = 0; number < 2; ++number) {
      for (int c = 0; c < 7; ++c) {
        std::string tag = "NNF" + std::string(number ? "P" : "S") + std::to_string(c + 1) + "-----A----";
        add_cell(lang, cells, {stem + "a", tag, stem + std::string(number ? plural[c] : singular[c])});
      }
    }
    paradigms.push_back(std::move(cells));
  }
  std::vector<Cell> punct;
  add_cell(lang, punct, {".", "Z:-------------", "."});
  add_cell(lang, punct, {"a", "J^-------------", "a"});

  auto& rng = pool.rng();
  for (std::size_t s = 0; s < sentences; ++s) {
    const std::size_t words = 2 + pick(rng, 10);
    std::vector<std::string> tokens;
    for (std::size_t w = 0; w < words; ++w) {
      if (w > 0 && pick(rng, 8) == 0) tokens.push_back("a");
      const auto& paradigm = paradigms[pick(rng, paradigms.size())];
      tokens.push_back(paradigm[pick(rng, paradigm.size())].surface);
    }
    tokens.push_back(".");
    lang.sentences.push_back(twostep::join_tokens(tokens));
  }
  lang.lexicon = twostep::load_lexicon(lang.lexicon_tsv);
  return lang;
}

SyntheticLanguage german_language(std::uint64_t seed, std::size_t lemmas, std::size_t sentences) {
  using twostep::upper_first;
  static constexpr std::array<std::string_view, 3> genders{"Masc", "Fem", "Neut"};
  static constexpr std::array<std::string_view, 4> cases{"Nom", "Gen", "Dat", "Acc"};
  static constexpr std::array<std::string_view, 4> noun_sg{"", "es", "e", ""};
  static constexpr std::array<std::string_view, 4> adj_strong{"er", "en", "em", "en"};
  static constexpr std::array<std::string_view, 4> adj_weak{"e", "en", "en", "en"};
  static constexpr std::array<std::string_view, 6> verb_suffix{"e", "st", "t", "en", "t", "en"};
  static constexpr std::array<std::string_view, 4> linking{"", "s", "es", "en"};

  SyntheticLanguage lang;
  StemPool pool(seed);
  auto& rng = pool.rng();

  // A word occurrence: its surface and its stem+feature tokens.
  struct Word {
    std::string surface;
    std::string stemmed;
  };
  std::vector<std::vector<Word>> paradigms;
  std::vector<Cell> sink;

  auto nominal = [](std::string_view head, std::string_view gender, std::string_view c, std::string_view n,
                    std::string_view strength) {
    return "<" + std::string(head) + "><" + std::string(gender) + "><" + std::string(c) + "><" + std::string(n) +
           "><" + std::string(strength) + ">";
  };

  struct Noun {
    std::string stem;
    std::string gender;
  };
  std::vector<Noun> nouns;
  const std::size_t noun_count = std::max<std::size_t>(lemmas / 2, 2);
  for (std::size_t i = 0; i < noun_count; ++i) {
    Noun noun{upper_first(pool.next()), std::string(genders[pick(rng, genders.size())])};
    lang.lemmas.push_back(noun.stem);
    std::vector<Word> forms;
    for (int number = 0; number < 2; ++number) {
      for (std::size_t c = 0; c < cases.size(); ++c) {
        const std::string tag = nominal("+NN", noun.gender, cases[c], number ? "Pl" : "Sg", "NA");
        const std::string surface = noun.stem + std::string(number ? "en" : noun_sg[c]);
        add_cell(lang, sink, {noun.stem, tag, surface});
        forms.push_back({surface, noun.stem + " " + tag});
      }
    }
    paradigms.push_back(std::move(forms));
    nouns.push_back(std::move(noun));
  }

  // Compounds: the first few nouns act as modifiers with a linking element.
  const std::size_t modifier_count = std::max<std::size_t>(noun_count / 4, 1);
  for (std::size_t m = 0; m < modifier_count; ++m) {
    const std::string form = nouns[m].stem + std::string(linking[m % linking.size()]);
    lang.lexicon_tsv += "@mod\t" + nouns[m].stem + "\t" + form + "\n";
    for (std::size_t h = modifier_count; h < nouns.size(); h += 2) {
      const Noun& head = nouns[h];
      const std::string lemma = nouns[m].stem + "<NN>" + head.stem;
      std::vector<Word> forms;
      for (int number = 0; number < 2; ++number) {
        for (std::size_t c = 0; c < cases.size(); ++c) {
          const std::string tag = nominal("+NN", head.gender, cases[c], number ? "Pl" : "Sg", "NA");
          const std::string head_surface = head.stem + std::string(number ? "en" : noun_sg[c]);
          const std::string surface = twostep::join_compound(form, head_surface, true);
          add_cell(lang, sink, {lemma, tag, surface});
          forms.push_back({surface, lemma + " " + tag});
        }
      }
      paradigms.push_back(std::move(forms));
    }
  }

  const std::size_t adjective_count = std::max<std::size_t>(lemmas / 4, 1);
  for (std::size_t i = 0; i < adjective_count; ++i) {
    const std::string stem = pool.next();
    const std::string lemma = stem + "<Pos>";
    lang.lemmas.push_back(lemma);
    std::vector<Word> forms;
    for (const auto gender : genders) {
      for (std::size_t c = 0; c < cases.size(); ++c) {
        for (int weak = 0; weak < 2; ++weak) {
          const std::string tag = nominal("+ADJ", gender, cases[c], "Sg", weak ? "Wk" : "St");
          const std::string surface = stem + std::string(weak ? adj_weak[c] : adj_strong[c]);
          add_cell(lang, sink, {lemma, tag, surface});
          forms.push_back({surface, lemma + " " + tag});
        }
      }
    }
    paradigms.push_back(std::move(forms));
  }

  const std::size_t verb_count = std::max<std::size_t>(lemmas / 4, 1);
  for (std::size_t i = 0; i < verb_count; ++i) {
    const std::string stem = pool.next();
    lang.lemmas.push_back(stem + "en");
    std::vector<Word> forms;
    for (std::size_t k = 0; k < verb_suffix.size(); ++k) {
      const std::string tag =
          "<+V><" + std::to_string(k % 3 + 1) + "><" + (k < 3 ? "Sg" : "Pl") + "><Pres><Ind>";
      add_cell(lang, sink, {stem + "en", tag, stem + std::string(verb_suffix[k])});
      forms.push_back({stem + std::string(verb_suffix[k]), stem + "en " + tag});
    }
    paradigms.push_back(std::move(forms));
  }

  const std::vector<Word> function_words{{"und", "und[KON]"}, {",", ",[$]"}, {"hier", "hier[ADV]"}};
  for (const auto& [surface, stemmed] : function_words) {
    const auto open = stemmed.find('[');
    add_cell(lang, sink, {surface, stemmed.substr(open), surface});
  }
  add_cell(lang, sink, {".", "[$]", "."});

  for (std::size_t s = 0; s < sentences; ++s) {
    const std::size_t words = 4 + pick(rng, 10);
    std::vector<std::string> surface, stemmed;
    for (std::size_t w = 0; w < words; ++w) {
      if (w > 0 && pick(rng, 6) == 0) {
        const auto& fw = function_words[pick(rng, function_words.size())];
        surface.push_back(fw.surface);
        stemmed.push_back(fw.stemmed);
      }
      const auto& paradigm = paradigms[pick(rng, paradigms.size())];
      const auto& word = paradigm[pick(rng, paradigm.size())];
      surface.push_back(word.surface);
      stemmed.push_back(word.stemmed);
    }
    surface.push_back(".");
    stemmed.push_back(".[$]");
    lang.sentences.push_back(twostep::join_tokens(surface));
    lang.stemmed.push_back(twostep::join_tokens(stemmed));
  }
  lang.lexicon = twostep::load_lexicon(lang.lexicon_tsv);
  return lang;
}

}  // namespace testing
