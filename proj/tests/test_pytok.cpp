#include <doctest.h>

#include "robeval/pytok.hpp"

using namespace robeval;
using namespace robeval::pytok;

TEST_CASE("tokenize classifies a simple statement") {
  std::string src = "total = total + values[i]";
  auto toks = tokenize(src);
  REQUIRE(toks.size() == 8);
  CHECK(toks[0].kind == TokKind::identifier);
  CHECK(toks[0].text(src) == "total");
  CHECK(toks[1].kind == TokKind::op);
  CHECK(toks[3].kind == TokKind::op);
  CHECK(toks[5].kind == TokKind::op);
  CHECK(toks[6].text(src) == "i");
}

TEST_CASE("keywords are not identifiers") {
  std::string src = "for i in range(3): return i";
  auto toks = tokenize(src);
  CHECK(toks[0].kind == TokKind::keyword);
  CHECK(toks[2].kind == TokKind::keyword);
  CHECK(is_keyword("while"));
  CHECK_FALSE(is_identifier("while"));
  CHECK(is_identifier("while_count"));
  CHECK_FALSE(is_identifier("9lives"));
  CHECK(is_identifier("_private"));
}

TEST_CASE("string literals are single tokens") {
  std::string src = "x = \"a + b\" + 'c # d'";
  auto toks = tokenize(src);
  REQUIRE(toks.size() == 5);
  CHECK(toks[2].kind == TokKind::string);
  CHECK(toks[2].text(src) == "\"a + b\"");
  CHECK(toks[4].text(src) == "'c # d'");
}

TEST_CASE("triple-quoted strings span lines") {
  std::string src = "s = \"\"\"line one\nline 'two'\n\"\"\"\ny = 1";
  auto toks = tokenize(src);
  REQUIRE(toks.size() == 6);
  CHECK(toks[2].kind == TokKind::string);
  CHECK(toks[2].text(src) == "\"\"\"line one\nline 'two'\n\"\"\"");
  CHECK(toks[3].text(src) == "y");
}

TEST_CASE("comments skipped by default, kept on request") {
  std::string src = "x = 1  # set x\ny = 2";
  CHECK(tokenize(src).size() == 6);
  auto kept = tokenize(src, true);
  REQUIRE(kept.size() == 7);
  CHECK(kept[3].kind == TokKind::comment);
  CHECK(kept[3].text(src) == "# set x");
}

TEST_CASE("backslash-newline is whitespace") {
  std::string src = "x = 1 + \\\n    2";
  auto texts = token_texts(src);
  REQUIRE(texts.size() == 5);
  CHECK(texts[4] == "2");
}

TEST_CASE("replace_identifier touches only identifier tokens") {
  std::string src = "total = subtotal + \"total\"  # total\ntotal2 = total";
  std::string out = replace_identifier(src, "total", "sum_");
  CHECK(out == "sum_ = subtotal + \"total\"  # total\ntotal2 = sum_");
}

TEST_CASE("count_identifier matches replace_identifier semantics") {
  std::string src = "f(x) + fx + 'f' # f\nf = f";
  CHECK(count_identifier(src, "f") == 3);
  CHECK(count_identifier(replace_identifier(src, "f", "g"), "f") == 0);
  CHECK(count_identifier(replace_identifier(src, "f", "g"), "g") == 3);
}

TEST_CASE("token_texts is layout-insensitive") {
  CHECK(token_texts("x=1+2") == token_texts("x = 1 + 2"));
  CHECK(token_texts("f(a, b)") == token_texts("f(a,\n  b)"));
  CHECK(token_texts("x = 1  # c") == token_texts("x = 1"));
  CHECK(token_texts("x=1") != token_texts("x=2"));
}

TEST_CASE("number and operator forms") {
  std::string src = "a != 1.5e3 and b <= 0x1f and c ** 2 // 3";
  auto toks = tokenize(src);
  CHECK(toks[1].text(src) == "!=");
  CHECK(toks[2].kind == TokKind::number);
  CHECK(toks[2].text(src) == "1.5e3");
  CHECK(toks[5].text(src) == "<=");
  CHECK(toks[6].kind == TokKind::number);
}

TEST_CASE("unterminated string consumes to end of input") {
  std::string src = "x = 'open";
  auto toks = tokenize(src);
  REQUIRE(toks.size() == 3);
  CHECK(toks[2].kind == TokKind::string);
  CHECK(toks[2].text(src) == "'open");
}
