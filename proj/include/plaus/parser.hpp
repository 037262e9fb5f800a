#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "plaus/model.hpp"
#include "plaus/scale.hpp"

namespace plaus {

// Position of a token in the source text; 1-based line and column, length in
// bytes. Spans always lie within the text they were produced from.
struct SourceSpan {
  int line = 1;
  int column = 1;
  int length = 0;

  bool operator==(const SourceSpan&) const = default;
};

enum class Severity { error, warning };

struct ParseDiagnostic {
  Severity severity = Severity::error;
  std::string code;
  std::string message;
  SourceSpan span;
};

// Either a case or at least one error diagnostic, never both.
struct ParseResult {
  std::optional<CaseSpec> spec;
  std::vector<ParseDiagnostic> diagnostics;

  bool ok() const { return spec.has_value(); }
};

// Parses `.case` text. Defaults (prior 1, coverage 1, complexity 1) are
// applied here; the result has already passed validate_case. Never throws on
// malformed input, whatever the bytes.
ParseResult parse_case(std::string_view source);
ParseResult parse_case(std::string_view source, const ScaleTable& scale);

// Canonical text form: deterministic, default clauses omitted, numbers in
// shortest round-trip notation. parse_case(serialize_case(c)) reconstructs c
// exactly for any case that validates.
std::string serialize_case(const CaseSpec& spec);

// file:line:col: severity[code]: message
std::string format_diagnostic(std::string_view filename, const ParseDiagnostic& diag);

}  // namespace plaus
