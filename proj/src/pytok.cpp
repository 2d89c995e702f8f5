#include "robeval/pytok.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace robeval::pytok {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_cont(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

const std::array<std::string_view, 35> kKeywords = {
    "False", "None",   "True",  "and",      "as",     "assert", "async",
    "await", "break",  "class", "continue", "def",    "del",    "elif",
    "else",  "except", "finally", "for",    "from",   "global", "if",
    "import", "in",    "is",    "lambda",   "nonlocal", "not",  "or",
    "pass",  "raise",  "return", "try",     "while",  "with",   "yield"};

bool string_prefix(std::string_view s) {
  if (s.size() > 2) return false;
  for (char c : s) {
    char l = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (l != 'r' && l != 'b' && l != 'u' && l != 'f') return false;
  }
  return !s.empty();
}

// Multi-character operators, longest first.
const std::array<std::string_view, 26> kOps3 = {
    "**=", "//=", ">>=", "<<=", "...", "->",  ":=",  "**", "//", ">>", "<<", "<=",
    ">=",  "==",  "!=",  "+=",  "-=",  "*=",  "/=",  "%=", "&=", "|=", "^=", "@=",
    "~=",  "=="};

std::size_t scan_string(std::string_view src, std::size_t i) {
  // i points at the opening quote. Returns index one past the closing quote.
  char q = src[i];
  bool triple = i + 2 < src.size() && src[i + 1] == q && src[i + 2] == q;
  std::size_t j = i + (triple ? 3 : 1);
  while (j < src.size()) {
    if (src[j] == '\\') {
      j += 2;
      continue;
    }
    if (triple) {
      if (src[j] == q && j + 2 < src.size() && src[j + 1] == q && src[j + 2] == q)
        return j + 3;
      ++j;
    } else {
      if (src[j] == q) return j + 1;
      if (src[j] == '\n') return j;  // unterminated single-quoted string
      ++j;
    }
  }
  return src.size();
}

}  // namespace

bool is_keyword(std::string_view s) {
  return std::find(kKeywords.begin(), kKeywords.end(), s) != kKeywords.end();
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !ident_start(s[0])) return false;
  for (char c : s.substr(1))
    if (!ident_cont(c)) return false;
  return !is_keyword(s);
}

std::vector<Token> tokenize(std::string_view src, bool keep_comments) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = src.size();
  while (i < n) {
    char c = src[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f') {
      ++i;
      continue;
    }
    if (c == '\\' && i + 1 < n && (src[i + 1] == '\n' || src[i + 1] == '\r')) {
      i += 2;
      continue;
    }
    if (c == '#') {
      std::size_t j = i;
      while (j < n && src[j] != '\n') ++j;
      if (keep_comments) out.push_back({TokKind::comment, {i, j}});
      i = j;
      continue;
    }
    if (c == '"' || c == '\'') {
      std::size_t j = scan_string(src, i);
      out.push_back({TokKind::string, {i, j}});
      i = j;
      continue;
    }
    if (ident_start(c)) {
      std::size_t j = i + 1;
      while (j < n && ident_cont(src[j])) ++j;
      std::string_view word = src.substr(i, j - i);
      if (j < n && (src[j] == '"' || src[j] == '\'') && string_prefix(word)) {
        std::size_t k = scan_string(src, j);
        out.push_back({TokKind::string, {i, k}});
        i = k;
        continue;
      }
      out.push_back({is_keyword(word) ? TokKind::keyword : TokKind::identifier, {i, j}});
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && i + 1 < n && std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
      std::size_t j = i + 1;
      while (j < n) {
        char d = src[j];
        if (std::isalnum(static_cast<unsigned char>(d)) || d == '.' || d == '_') {
          ++j;
        } else if ((d == '+' || d == '-') && (src[j - 1] == 'e' || src[j - 1] == 'E') &&
                   std::isdigit(static_cast<unsigned char>(src[i]))) {
          ++j;  // exponent sign
        } else {
          break;
        }
      }
      out.push_back({TokKind::number, {i, j}});
      i = j;
      continue;
    }
    // Operator / punctuation: try multi-char forms first.
    std::size_t len = 1;
    for (auto op : kOps3) {
      if (src.substr(i, op.size()) == op) {
        len = op.size();
        break;
      }
    }
    out.push_back({TokKind::op, {i, i + len}});
    i += len;
  }
  return out;
}

std::string replace_identifier(std::string_view src, std::string_view old_name,
                               std::string_view new_name) {
  std::string out;
  out.reserve(src.size());
  std::size_t prev = 0;
  for (const auto& t : tokenize(src, /*keep_comments=*/true)) {
    if (t.kind == TokKind::identifier && t.text(src) == old_name) {
      out.append(src.substr(prev, t.range.start - prev));
      out.append(new_name);
      prev = t.range.end;
    }
  }
  out.append(src.substr(prev));
  return out;
}

int count_identifier(std::string_view src, std::string_view name) {
  int count = 0;
  for (const auto& t : tokenize(src))
    if (t.kind == TokKind::identifier && t.text(src) == name) ++count;
  return count;
}

std::vector<std::string> token_texts(std::string_view src) {
  std::vector<std::string> out;
  for (const auto& t : tokenize(src)) out.emplace_back(t.text(src));
  return out;
}

}  // namespace robeval::pytok
