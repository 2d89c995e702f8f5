#include "robeval/textperturb.hpp"

#include <cctype>
#include <vector>

namespace robeval {

namespace {

bool word_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool word_cont(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

struct Segment {
  std::string text;
  bool is_word = false;
  bool frozen = false;  // blacklisted word, copied verbatim
};

std::vector<Segment> segment(const std::string& text, const TextPerturbContext& ctx) {
  std::vector<Segment> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (word_start(text[i])) {
      std::size_t j = i + 1;
      while (j < text.size() && word_cont(text[j])) ++j;
      Segment s{text.substr(i, j - i), true, false};
      if (ctx.blacklist && ctx.blacklist->count(s.text)) s.frozen = true;
      out.push_back(std::move(s));
      i = j;
    } else {
      std::size_t j = i + 1;
      while (j < text.size() && !word_start(text[j])) ++j;
      out.push_back({text.substr(i, j - i), false, false});
      i = j;
    }
  }
  return out;
}

std::string join(const std::vector<Segment>& segs) {
  std::string out;
  for (const auto& s : segs) out += s.text;
  return out;
}

bool is_stopword(const std::string& word) {
  std::string lower;
  for (char c : word) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return stopwords().count(lower) != 0;
}

std::string match_capitalization(const std::string& original, std::string replacement) {
  if (!original.empty() && !replacement.empty() &&
      std::isupper(static_cast<unsigned char>(original[0])))
    replacement[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(replacement[0])));
  return replacement;
}

bool lower_word(const std::string& w, std::string& out) {
  out.clear();
  for (char c : w) {
    if (!std::isalpha(static_cast<unsigned char>(c))) return false;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return !out.empty();
}

}  // namespace

const std::set<std::string>& stopwords() {
  static const std::set<std::string> words = {
      "a",     "about", "above", "after",  "again",  "against", "all",   "am",    "an",
      "and",   "any",   "are",   "as",     "at",     "be",      "because", "been", "before",
      "being", "below", "between", "both", "but",    "by",      "can",   "could", "did",
      "do",    "does",  "doing", "down",   "during", "each",    "few",   "for",   "from",
      "further", "had", "has",   "have",   "having", "he",      "her",   "here",  "hers",
      "herself", "him", "himself", "his",  "how",    "i",       "if",    "in",    "into",
      "is",    "it",    "its",   "itself", "just",   "me",      "more",  "most",  "my",
      "myself", "no",   "nor",   "not",    "now",    "of",      "off",   "on",    "once",
      "only",  "or",    "other", "our",    "ours",   "ourselves", "out", "over",  "own",
      "same",  "she",   "should", "so",    "some",   "such",    "than",  "that",  "the",
      "their", "theirs", "them", "themselves", "then", "there",  "these", "they", "this",
      "those", "through", "to",  "too",    "under",  "until",   "up",    "very",  "was",
      "we",    "were",  "what",  "when",   "where",  "which",   "while", "who",   "whom",
      "why",   "will",  "with",  "would",  "you",    "your",    "yours", "yourself",
      "yourselves"};
  return words;
}

const std::string& qwerty_neighbors(char lower) {
  static const std::map<char, std::string> table = {
      {'q', "wa"},    {'w', "qase"},  {'e', "wsdr"},  {'r', "edft"},  {'t', "rfgy"},
      {'y', "tghu"},  {'u', "yhji"},  {'i', "ujko"},  {'o', "iklp"},  {'p', "ol"},
      {'a', "qwsz"},  {'s', "awedxz"}, {'d', "serfcx"}, {'f', "drtgvc"}, {'g', "ftyhbv"},
      {'h', "gyujnb"}, {'j', "huikmn"}, {'k', "jiolm"}, {'l', "kop"},  {'z', "asx"},
      {'x', "zsdc"},  {'c', "xdfv"},  {'v', "cfgb"},  {'b', "vghn"},  {'n', "bhjm"},
      {'m', "njk"}};
  static const std::string empty;
  auto it = table.find(lower);
  return it == table.end() ? empty : it->second;
}

std::string butterfingers(const std::string& text, double p, Rng& rng,
                          const TextPerturbContext& ctx) {
  auto segs = segment(text, ctx);
  for (auto& s : segs) {
    if (s.frozen) continue;
    for (char& c : s.text) {
      if (!std::isalpha(static_cast<unsigned char>(c)) || !rng.bernoulli(p)) continue;
      bool upper = std::isupper(static_cast<unsigned char>(c));
      char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      const std::string& adj = qwerty_neighbors(lower);
      if (adj.empty()) continue;
      char repl = adj[rng.uniform_index(adj.size())];
      c = upper ? static_cast<char>(std::toupper(static_cast<unsigned char>(repl))) : repl;
    }
  }
  return join(segs);
}

std::string change_char_case(const std::string& text, double p, Rng& rng,
                             const TextPerturbContext& ctx) {
  auto segs = segment(text, ctx);
  for (auto& s : segs) {
    if (s.frozen) continue;
    for (char& c : s.text)
      if (std::islower(static_cast<unsigned char>(c)) && rng.bernoulli(p))
        c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  }
  return join(segs);
}

std::string swap_characters(const std::string& text, double p, Rng& rng,
                            const TextPerturbContext& ctx) {
  auto segs = segment(text, ctx);
  for (auto& s : segs) {
    if (s.frozen || s.text.size() < 2) continue;
    std::size_t i = 0;
    while (i + 1 < s.text.size()) {
      if (s.text[i] != ' ' && s.text[i] != '\n' && s.text[i + 1] != ' ' &&
          s.text[i + 1] != '\n' && rng.bernoulli(p)) {
        std::swap(s.text[i], s.text[i + 1]);
        i += 2;  // pairs do not overlap
      } else {
        ++i;
      }
    }
  }
  return join(segs);
}

std::string whitespace_perturb(const std::string& text, double p_add, double p_del, Rng& rng,
                               const TextPerturbContext& ctx) {
  auto segs = segment(text, ctx);
  std::string out;
  for (auto& s : segs) {
    if (s.frozen) {
      out += s.text;
      continue;
    }
    for (std::size_t i = 0; i < s.text.size(); ++i) {
      char c = s.text[i];
      if (c == ' ') {
        if (!rng.bernoulli(p_del)) out.push_back(c);
        continue;
      }
      out.push_back(c);
      // Inter-character insertion point after this character.
      bool at_text_end = (&s == &segs.back() && i + 1 == s.text.size());
      char next = (i + 1 < s.text.size()) ? s.text[i + 1] : '\0';
      if (!at_text_end && c != '\n' && next != '\n' && rng.bernoulli(p_add)) out.push_back(' ');
    }
  }
  return out;
}

std::string synonym_substitution(const std::string& text, double p, const Lexicon& lexicon,
                                 Rng& rng, const TextPerturbContext& ctx) {
  auto segs = segment(text, ctx);
  for (auto& s : segs) {
    if (!s.is_word || s.frozen || is_stopword(s.text)) continue;
    if (!rng.bernoulli(p)) continue;
    std::string lower;
    if (!lower_word(s.text, lower)) continue;
    auto syns = lexicon.synonyms(lower);
    if (syns.empty()) continue;
    s.text = match_capitalization(s.text, syns[rng.uniform_index(syns.size())]);
  }
  return join(segs);
}

std::string synonym_insertion(const std::string& text, double p, const Lexicon& lexicon,
                              Rng& rng, const TextPerturbContext& ctx) {
  auto segs = segment(text, ctx);
  std::string out;
  for (auto& s : segs) {
    out += s.text;
    if (!s.is_word || s.frozen || is_stopword(s.text)) continue;
    if (!rng.bernoulli(p)) continue;
    std::string lower;
    if (!lower_word(s.text, lower)) continue;
    auto syns = lexicon.synonyms(lower);
    if (syns.empty()) continue;
    out += " " + syns[rng.uniform_index(syns.size())];
  }
  return out;
}

std::string inflectional_variation(const std::string& text, double p, const Tagger& tagger,
                                   const Inflector& inflector, Rng& rng,
                                   const TextPerturbContext& ctx) {
  auto segs = segment(text, ctx);
  for (auto& s : segs) {
    if (!s.is_word || s.frozen || is_stopword(s.text)) continue;
    if (!rng.bernoulli(p)) continue;
    std::string lower;
    if (!lower_word(s.text, lower)) continue;
    Pos pos = tagger.tag(lower);
    if (pos != Pos::noun && pos != Pos::verb) continue;
    auto vars = inflector.variants(lower, pos);
    if (vars.empty()) continue;
    s.text = match_capitalization(s.text, vars[rng.uniform_index(vars.size())]);
  }
  return join(segs);
}

namespace {

bool is_be_form(const std::string& w) {
  return w == "is" || w == "am" || w == "are" || w == "was" || w == "were" || w == "be";
}

// True when the tagger/inflector pair recognizes w as a present-tense verb
// it can rewrite confidently.
bool confident_present_verb(const std::string& w, const Tagger& tagger,
                            const Inflector& inflector) {
  if (w.size() > 2 && (w.compare(w.size() - 2, 2, "ed") == 0)) return false;
  if (w.size() > 3 && (w.compare(w.size() - 3, 3, "ing") == 0)) return false;
  if (tagger.tag(w) != Pos::verb) return false;
  return inflector.base(w).has_value() || true;
}

}  // namespace

std::string tense_past(const std::string& text, const Tagger& tagger,
                       const Inflector& inflector, const TextPerturbContext& ctx) {
  auto segs = segment(text, ctx);
  for (auto& s : segs) {
    if (!s.is_word || s.frozen) continue;
    std::string lower;
    if (!lower_word(s.text, lower)) continue;
    if (is_be_form(lower)) {
      if (lower != "was" && lower != "were")
        s.text = match_capitalization(s.text, "was");
      continue;
    }
    if (is_stopword(lower)) continue;
    if (!confident_present_verb(lower, tagger, inflector)) continue;
    std::string b = inflector.base(lower).value_or(lower);
    auto past = inflector.past(b);
    if (past && *past != lower) s.text = match_capitalization(s.text, *past);
  }
  return join(segs);
}

std::string tense_future(const std::string& text, const Tagger& tagger,
                         const Inflector& inflector, const TextPerturbContext& ctx) {
  auto segs = segment(text, ctx);
  std::string out;
  bool skip_next_verb = false;
  for (auto& s : segs) {
    std::string lower;
    bool word = s.is_word && lower_word(s.text, lower);
    if (!word || s.frozen) {
      // Punctuation-only separators keep the will-flag alive; words reset it below.
      out += s.text;
      continue;
    }
    if (lower == "will") {
      skip_next_verb = true;
      out += s.text;
      continue;
    }
    if (skip_next_verb) {
      skip_next_verb = false;
      out += s.text;
      continue;
    }
    if (is_be_form(lower)) {
      out += match_capitalization(s.text, "will be");
      continue;
    }
    if (!is_stopword(lower) && confident_present_verb(lower, tagger, inflector)) {
      std::string b = inflector.base(lower).value_or(lower);
      out += match_capitalization(s.text, "will " + b);
      continue;
    }
    out += s.text;
  }
  return out;
}

}  // namespace robeval
