#pragma once

#include <stdexcept>
#include <string>

namespace plaus {

// Evaluation-time failure with a stable machine-readable code.
// A case that passes validate_case never triggers one of these from the
// inference entry points; they surface misuse (bad sweep targets, conclusive
// evidence under a coverage discount, zero-by-infinite combinations).
class EvalError : public std::runtime_error {
 public:
  EvalError(std::string code, const std::string& message)
      : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

namespace err {
inline constexpr const char* kContradictoryConclusives = "CONTRADICTORY_CONCLUSIVES";
inline constexpr const char* kNonfiniteWithCoverage = "NONFINITE_WITH_COVERAGE";
inline constexpr const char* kUndefinedLr = "UNDEFINED_LR";
inline constexpr const char* kUnknownTarget = "UNKNOWN_TARGET";
inline constexpr const char* kDomain = "DOMAIN";
inline constexpr const char* kConfig = "CONFIG";
}  // namespace err

}  // namespace plaus
