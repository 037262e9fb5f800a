#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "plaus/log_odds.hpp"
#include "plaus/model.hpp"

namespace plaus {

// Posterior-odds evaluation. Everything combines additively in natural-log
// space: per claim, total = log prior + sum of coverage-discounted log LRs +
// net Occam factor. All functions are pure; a case with a clean
// ValidationReport never makes them throw.

enum class Finding { met, not_met };

// c * ln(lr). Conclusive ratios (0, inf) keep their state; discounting them
// (coverage < 1) has no defined value and raises NONFINITE_WITH_COVERAGE.
LogOdds group_effective_log_lr(const EvidenceGroup& group);

// ln(opposing / claimant): penalising the opposing explanation raises the
// claimant's odds by the complexity ratio, and only the ratio matters.
LogOdds occam_net_log_factor(double claimant_complexity, double opposing_complexity);

LogOdds claim_posterior_log_odds(const Claim& claim);

struct CaseOdds {
  std::vector<std::pair<std::string, LogOdds>> per_claim;  // case order
  LogOdds combined;  // informational; standards gate claims, never this sum
};
CaseOdds case_combined_log_odds(const CaseSpec& spec);

double probability_from_odds(const LogOdds& odds);

// met iff odds strictly exceed the threshold; a tie leaves the burden unmet.
Finding apply_standard(const LogOdds& odds, const StandardOfProof& standard);
std::string_view finding_name(Finding finding);

struct GroupContribution {
  std::string group_id;
  LogOdds raw_log_lr;        // ln lr
  double coverage = 1.0;
  LogOdds effective_log_lr;  // c * ln lr
};

struct ClaimContribution {
  std::string claim_id;
  LogOdds prior_log_odds;
  std::vector<GroupContribution> groups;
  double occam_log_factor = 0.0;
  LogOdds total;  // equals claim_posterior_log_odds bit for bit
};

struct ContributionReport {
  std::string case_id;
  std::vector<ClaimContribution> claims;
  LogOdds combined;
  // Product of the per-claim probabilities: what a reader worried about
  // conjoined claims expects to see, shown next to the combined odds that
  // actually answer the question.
  double naive_joint_probability = 1.0;
};

ContributionReport explain(const CaseSpec& spec);

// --- sensitivity sweeps ------------------------------------------------

// Target paths: <claim>.prior | <claim>.<group>.lr | <claim>.<group>.coverage
//             | <claim>.for.complexity | <claim>.against.complexity
struct SweepRow {
  double value = 0.0;
  std::vector<std::pair<std::string, LogOdds>> per_claim;
  std::vector<Finding> findings;  // parallel to per_claim
  LogOdds combined;
};

struct SweepTable {
  std::string target;
  std::vector<SweepRow> rows;
};

// UNKNOWN_TARGET if the path resolves to nothing; DOMAIN if a value leaves
// the substituted case invalid.
SweepTable sweep(const CaseSpec& spec, std::string_view target, std::span<const double> values,
                 const StandardOfProof& standard);

}  // namespace plaus
