#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>
#include <vector>

#include "robeval/textperturb.hpp"

using namespace robeval;

namespace {

const std::string kText = "Return the list of values below the given limit.";

std::multiset<char> char_multiset(const std::string& s) {
  return {s.begin(), s.end()};
}

std::vector<std::string> words_of(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

bool contains_word(const std::string& text, const std::string& word) {
  auto ws = words_of(text);
  return std::find(ws.begin(), ws.end(), word) != ws.end();
}

// Blacklisted words are copied verbatim, so a plain substring check suffices
// even when surrounding text gained or lost spaces.
bool contains_intact(const std::string& text, const std::string& word) {
  return text.find(word) != std::string::npos;
}

}  // namespace

TEST_CASE("ops are deterministic for a fixed seed") {
  for (std::uint64_t seed : {1ULL, 2ULL, 99ULL}) {
    Rng a(seed), b(seed);
    CHECK(butterfingers(kText, 0.3, a) == butterfingers(kText, 0.3, b));
    Rng c(seed), d(seed);
    CHECK(swap_characters(kText, 0.3, c) == swap_characters(kText, 0.3, d));
  }
}

TEST_CASE("butterfingers substitutes only with keyboard neighbors") {
  Rng rng(5);
  std::string out = butterfingers(kText, 0.5, rng);
  REQUIRE(out.size() == kText.size());
  bool changed = false;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i] == kText[i]) continue;
    changed = true;
    char orig = static_cast<char>(std::tolower(static_cast<unsigned char>(kText[i])));
    const std::string& nbrs = qwerty_neighbors(orig);
    CHECK(nbrs.find(static_cast<char>(std::tolower(static_cast<unsigned char>(out[i])))) !=
          std::string::npos);
  }
  CHECK(changed);
  CHECK(butterfingers(kText, 0.0, rng) == kText);
}

TEST_CASE("change_char_case only uppercases letters in place") {
  Rng rng(5);
  std::string out = change_char_case(kText, 0.5, rng);
  REQUIRE(out.size() == kText.size());
  bool changed = false;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i] == kText[i]) continue;
    changed = true;
    CHECK(out[i] == std::toupper(static_cast<unsigned char>(kText[i])));
  }
  CHECK(changed);
}

TEST_CASE("swap_characters preserves the character multiset") {
  Rng rng(9);
  std::string out = swap_characters(kText, 0.4, rng);
  CHECK(out != kText);
  CHECK(char_multiset(out) == char_multiset(kText));
  CHECK(out.size() == kText.size());
}

TEST_CASE("whitespace perturbation only edits spaces") {
  Rng rng(3);
  std::string out = whitespace_perturb(kText, 0.2, 0.2, rng);
  std::string stripped_in = kText, stripped_out = out;
  auto strip = [](std::string& s) {
    s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
  };
  strip(stripped_in);
  strip(stripped_out);
  CHECK(stripped_in == stripped_out);
  CHECK(out != kText);
}

TEST_CASE("blacklisted words survive every randomized op verbatim") {
  std::set<std::string> bl = {"limit", "values"};
  TextPerturbContext ctx{&bl};
  Lexicon lex;
  lex.add("limit", Pos::noun, {"bound"});
  lex.add("values", Pos::noun, {"amounts"});
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Rng r1(seed), r2(seed), r3(seed), r4(seed), r5(seed);
    CHECK(contains_intact(butterfingers(kText, 0.9, r1, ctx), "limit"));
    CHECK(contains_intact(change_char_case(kText, 0.9, r2, ctx), "values"));
    CHECK(contains_intact(swap_characters(kText, 0.9, r3, ctx), "limit"));
    std::string syn = synonym_substitution(kText, 1.0, lex, r4, ctx);
    CHECK(contains_intact(syn, "limit"));
    CHECK(contains_intact(syn, "values"));
    CHECK(contains_intact(whitespace_perturb(kText, 0.9, 0.9, r5, ctx), "values"));
  }
}

TEST_CASE("synonym substitution uses lexicon entries and skips stopwords") {
  Lexicon lex;
  lex.add("list", Pos::noun, {"sequence"});
  Rng rng(2);
  std::string out = synonym_substitution(kText, 1.0, lex, rng);
  CHECK(contains_word(out, "sequence"));
  CHECK_FALSE(contains_word(out, "list"));
  // "the" is a stopword and has no lexicon entry: it must survive.
  CHECK(contains_word(out, "the"));
}

TEST_CASE("synonym insertion adds the synonym right after the word") {
  Lexicon lex;
  lex.add("limit", Pos::noun, {"bound"});
  Rng rng(2);
  std::string out = synonym_insertion("below the limit today", 1.0, lex, rng);
  auto ws = words_of(out);
  auto it = std::find(ws.begin(), ws.end(), "limit");
  REQUIRE(it != ws.end());
  REQUIRE(it + 1 != ws.end());
  CHECK(*(it + 1) == "bound");
}

TEST_CASE("inflectional variation keeps the coarse part of speech") {
  Lexicon lex;
  lex.add("value", Pos::noun, {});
  Tagger tagger(&lex);
  Inflector inf;
  Rng rng(4);
  std::string out = inflectional_variation("the value", 1.0, tagger, inf, rng);
  CHECK(contains_word(out, "values"));
}

TEST_CASE("tense_past rewrites and is idempotent") {
  Tagger tagger;
  Inflector inf;
  std::string once = tense_past("This is the result that returns a list.", tagger, inf);
  CHECK(contains_word(once, "was"));
  CHECK(tense_past(once, tagger, inf) == once);
}

TEST_CASE("tense_future rewrites and is idempotent") {
  Tagger tagger;
  Inflector inf;
  std::string once = tense_future("This is the total.", tagger, inf);
  CHECK(once.find("will be") != std::string::npos);
  CHECK(tense_future(once, tagger, inf) == once);
}

TEST_CASE("stopword table sanity") {
  const auto& sw = stopwords();
  CHECK(sw.size() >= 100);
  CHECK(sw.count("the") == 1);
  CHECK(sw.count("of") == 1);
  CHECK(sw.count("limit") == 0);
}

TEST_CASE("qwerty neighbors are symmetric") {
  for (char c = 'a'; c <= 'z'; ++c) {
    for (char n : qwerty_neighbors(c)) {
      CHECK(qwerty_neighbors(n).find(c) != std::string::npos);
    }
  }
  CHECK(!qwerty_neighbors('a').empty());
}
