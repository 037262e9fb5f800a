#pragma once

#include <cstdint>
#include <vector>

#include "plaus/model.hpp"
#include "plaus/oracle.hpp"

namespace plaus {

// Property checks a sound evaluation cannot fail: permuting the case must not
// move any total, the evidence partition must be honest, a serialize/parse
// round trip must evaluate identically, and neutral/supporting probe evidence
// must leave odds alone / raise them. Deterministic given (case, trials, seed).
struct CoherenceOptions {
  int trials = 100;           // random permutations to try
  std::uint64_t seed = 0;
  double log_tol = 1e-12;     // absolute tolerance on log-odds comparisons
};

std::vector<CheckResult> check_case_coherence(const CaseSpec& spec, const CoherenceOptions& options);
std::vector<CheckResult> check_case_coherence(const CaseSpec& spec, int trials, std::uint64_t seed);

}  // namespace plaus
