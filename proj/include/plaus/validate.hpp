#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "plaus/model.hpp"

namespace plaus {

// Structural validation. Every defect is reported, nothing throws; an empty
// report is the exact precondition for the inference entry points (a clean
// case can always be evaluated).
enum class ViolationCode {
  DUPLICATE_ITEM,
  ITEM_IN_TWO_GROUPS,
  COVERAGE_OUT_OF_RANGE,
  NEGATIVE_LR,
  COMPLEXITY_LT_ONE,
  EMPTY_CLAIM,
  EMPTY_GROUP,
  DUPLICATE_CLAIM,
  DUPLICATE_GROUP,
  DUPLICATE_ASSUMPTION,
  INVALID_PRIOR,
  NONFINITE_WITH_COVERAGE,
  CONTRADICTORY_CONCLUSIVES,
  UNKNOWN_ASSUMPTION,
  BAD_IDENTIFIER,
};

struct Violation {
  ViolationCode code;
  std::string subject;  // id of the offending entity (case id for case-level defects)
  std::string message;

  auto operator<=>(const Violation&) const = default;
};

struct ValidationReport {
  // Canonically ordered by (code, subject, message): permuting claims,
  // groups, or items in the input yields an identical report.
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(ViolationCode code) const;
};

ValidationReport validate_case(const CaseSpec& spec);

std::string_view violation_code_name(ViolationCode code);

// Identifier lexical rule shared by validator and parser:
// [A-Za-z_][A-Za-z0-9_-]* and not a reserved word of the case grammar.
bool valid_identifier(std::string_view id);
bool reserved_word(std::string_view word);

}  // namespace plaus
