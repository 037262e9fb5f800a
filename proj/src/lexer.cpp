#include "lexer.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

namespace plaus::detail {

namespace {

bool ident_start(unsigned char c) { return std::isalpha(c) || c == '_'; }
bool ident_char(unsigned char c) { return std::isalnum(c) || c == '_' || c == '-'; }
bool number_start(std::string_view s, std::size_t i) {
  const unsigned char c = static_cast<unsigned char>(s[i]);
  if (std::isdigit(c)) return true;
  if ((c == '-' || c == '+' || c == '.') && i + 1 < s.size()) {
    const unsigned char n = static_cast<unsigned char>(s[i + 1]);
    if (c == '.') return std::isdigit(n);
    return std::isdigit(n) || n == '.';
  }
  return false;
}

}  // namespace

LexResult lex(std::string_view source) {
  LexResult result;
  int line = 1;
  int column = 1;
  std::size_t i = 0;

  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < source.size(); ++k, ++i) {
      if (source[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
  };

  auto diag = [&](std::string code, std::string message, SourceSpan span) {
    result.diagnostics.push_back(
        ParseDiagnostic{Severity::error, std::move(code), std::move(message), span});
  };

  while (i < source.size()) {
    const unsigned char c = static_cast<unsigned char>(source[i]);
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < source.size() && source[i] != '\n') advance(1);
      continue;
    }

    SourceSpan span{line, column, 1};

    if (c == '{' || c == '}') {
      Token tok;
      tok.kind = c == '{' ? TokenKind::lbrace : TokenKind::rbrace;
      tok.text = std::string(1, static_cast<char>(c));
      tok.span = span;
      result.tokens.push_back(std::move(tok));
      advance(1);
      continue;
    }

    if (c == '"') {
      const std::size_t start = i;
      advance(1);
      std::string payload;
      bool closed = false;
      while (i < source.size()) {
        const char sc = source[i];
        if (sc == '"') {
          advance(1);
          closed = true;
          break;
        }
        if (sc == '\n') break;  // strings are single-line; \n must be escaped
        if (sc == '\\') {
          if (i + 1 >= source.size() || source[i + 1] == '\n') {
            advance(1);  // the newline (or EOF) ends the line, leaving the string open
            break;
          }
          const char esc = source[i + 1];
          advance(2);
          switch (esc) {
            case '"': payload += '"'; break;
            case '\\': payload += '\\'; break;
            case 'n': payload += '\n'; break;
            case 't': payload += '\t'; break;
            default: {
              span.length = static_cast<int>(i - start);
              diag("BAD_ESCAPE", std::string("unknown escape '\\") + esc + "' in string", span);
              payload += esc;
              break;
            }
          }
          continue;
        }
        payload += sc;
        advance(1);
      }
      span.length = static_cast<int>(i - start);
      if (!closed) {
        diag("UNTERMINATED_STRING", "string literal is not terminated", span);
        continue;
      }
      Token tok;
      tok.kind = TokenKind::string;
      tok.text = std::move(payload);
      tok.span = span;
      result.tokens.push_back(std::move(tok));
      continue;
    }

    if (number_start(source, i)) {
      const std::size_t start = i;
      while (i < source.size()) {
        const unsigned char nc = static_cast<unsigned char>(source[i]);
        if (std::isdigit(nc) || nc == '.' || nc == 'e' || nc == 'E') {
          advance(1);
          continue;
        }
        // sign is part of the number only directly after an exponent marker
        if ((nc == '+' || nc == '-') &&
            (i == start || (i > start && (source[i - 1] == 'e' || source[i - 1] == 'E')))) {
          advance(1);
          continue;
        }
        break;
      }
      std::string_view lexeme = source.substr(start, i - start);
      span.length = static_cast<int>(lexeme.size());
      double value = 0.0;
      auto [ptr, ec] = std::from_chars(lexeme.data(), lexeme.data() + lexeme.size(), value);
      if (ec != std::errc() || ptr != lexeme.data() + lexeme.size() || std::isnan(value) ||
          std::isinf(value)) {
        diag("BAD_NUMBER", "malformed number '" + std::string(lexeme) + "'", span);
        continue;
      }
      Token tok;
      tok.kind = TokenKind::number;
      tok.text = std::string(lexeme);
      tok.number = value;
      tok.span = span;
      result.tokens.push_back(std::move(tok));
      continue;
    }

    if (ident_start(c)) {
      const std::size_t start = i;
      while (i < source.size() && ident_char(static_cast<unsigned char>(source[i]))) advance(1);
      std::string_view lexeme = source.substr(start, i - start);
      span.length = static_cast<int>(lexeme.size());
      Token tok;
      tok.kind = TokenKind::ident;
      tok.text = std::string(lexeme);
      tok.span = span;
      result.tokens.push_back(std::move(tok));
      continue;
    }

    diag("UNEXPECTED_CHAR",
         "unexpected character (byte 0x" +
             [](unsigned char b) {
               static const char* hex = "0123456789abcdef";
               return std::string{hex[b >> 4], hex[b & 0xf]};
             }(c) +
             ")",
         span);
    advance(1);
  }

  Token end;
  end.kind = TokenKind::end;
  end.span = SourceSpan{line, column, 0};
  result.tokens.push_back(std::move(end));
  return result;
}

}  // namespace plaus::detail
