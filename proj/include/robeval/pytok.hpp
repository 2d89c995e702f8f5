#pragma once
// A small lexical scanner for the subject language (Python). Produces flat
// token streams with byte ranges; used for identifier-level rewrites, token
// counting, and token-stream equality oracles. Grammar-level questions go
// through the parse facade instead.

#include <string>
#include <string_view>
#include <vector>

#include "robeval/types.hpp"

namespace robeval::pytok {

enum class TokKind { identifier, keyword, number, string, op, comment };

struct Token {
  TokKind kind;
  ByteRange range;

  std::string_view text(std::string_view src) const {
    return src.substr(range.start, range.end - range.start);
  }
};

// Lexes src. Whitespace, newlines, and backslash-newline continuations are
// skipped; comments are emitted only when keep_comments is set. Unterminated
// strings are consumed to end of input rather than rejected.
std::vector<Token> tokenize(std::string_view src, bool keep_comments = false);

// True iff s matches the identifier rule and is not a reserved keyword.
bool is_identifier(std::string_view s);

bool is_keyword(std::string_view s);

// Replaces every identifier-token occurrence of old_name with new_name.
// Substring matches inside longer identifiers, strings, and comments are
// left alone.
std::string replace_identifier(std::string_view src, std::string_view old_name,
                               std::string_view new_name);

// Number of identifier-token occurrences of name in src.
int count_identifier(std::string_view src, std::string_view name);

// Token texts with comments stripped; equal streams mean the inputs are
// lexically identical modulo layout.
std::vector<std::string> token_texts(std::string_view src);

}  // namespace robeval::pytok
