#pragma once

// Line-oriented tokenizer shared by the .case and .world readers.
// Internal to the parsing code; not installed.

#include <string>
#include <string_view>
#include <vector>

#include "plaus/parser.hpp"

namespace plaus::detail {

enum class TokenKind { ident, string, number, lbrace, rbrace, end };

struct Token {
  TokenKind kind = TokenKind::end;
  std::string text;    // ident name or decoded string payload
  double number = 0.0; // valid for kind == number (and ident "inf" when a number is wanted)
  SourceSpan span;
};

struct LexResult {
  std::vector<Token> tokens;  // always terminated by an `end` token
  std::vector<ParseDiagnostic> diagnostics;

  bool ok() const { return diagnostics.empty(); }
};

// Tokenizes the whole input. `#` starts a comment. Strings are double-quoted,
// single-line, with \" \\ \n \t escapes. Numbers are decimal with optional
// sign and exponent; the word `inf` stays an ident and is promoted where a
// number is expected. Arbitrary bytes produce diagnostics, never crashes.
LexResult lex(std::string_view source);

}  // namespace plaus::detail
