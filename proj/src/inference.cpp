#include "plaus/inference.hpp"

#include <cmath>
#include <limits>

#include "plaus/errors.hpp"
#include "plaus/validate.hpp"

namespace plaus {

LogOdds group_effective_log_lr(const EvidenceGroup& group) {
  if (std::isnan(group.lr) || group.lr < 0.0) {
    throw EvalError(err::kDomain, "group '" + group.id + "' has lr " + std::to_string(group.lr));
  }
  const bool conclusive = group.lr == 0.0 || std::isinf(group.lr);
  if (conclusive) {
    if (group.coverage < 1.0) {
      throw EvalError(err::kNonfiniteWithCoverage,
                      "group '" + group.id + "' is conclusive; coverage discounting it is undefined");
    }
    return group.lr == 0.0 ? LogOdds::conclusive_zero() : LogOdds::conclusive_infinite();
  }
  return LogOdds::from_log(group.coverage * std::log(group.lr));
}

LogOdds occam_net_log_factor(double claimant_complexity, double opposing_complexity) {
  if (!(claimant_complexity >= 1.0) || !(opposing_complexity >= 1.0) ||
      std::isinf(claimant_complexity) || std::isinf(opposing_complexity)) {
    throw EvalError(err::kDomain, "complexities must be finite reals >= 1");
  }
  return LogOdds::from_log(std::log(opposing_complexity / claimant_complexity));
}

namespace {

// Canonical accumulation order: prior, groups as listed, Occam factor last.
// explain() and claim_posterior_log_odds() share this, so their totals agree
// exactly.
LogOdds claim_total(const Claim& claim, std::vector<GroupContribution>* contributions,
                    double* occam_out) {
  std::vector<LogOdds> terms;
  terms.reserve(claim.groups.size() + 2);
  terms.push_back(LogOdds::from_odds(claim.prior_odds));
  for (const EvidenceGroup& group : claim.groups) {
    const LogOdds effective = group_effective_log_lr(group);
    terms.push_back(effective);
    if (contributions) {
      GroupContribution row;
      row.group_id = group.id;
      row.raw_log_lr = group.lr == 0.0 ? LogOdds::conclusive_zero()
                       : std::isinf(group.lr) ? LogOdds::conclusive_infinite()
                                              : LogOdds::from_log(std::log(group.lr));
      row.coverage = group.coverage;
      row.effective_log_lr = effective;
      contributions->push_back(std::move(row));
    }
  }
  const LogOdds occam = occam_net_log_factor(claim.claimant.complexity, claim.opposing.complexity);
  terms.push_back(occam);
  if (occam_out) *occam_out = occam.log_value();
  return accumulate_log_odds(terms);
}

}  // namespace

LogOdds claim_posterior_log_odds(const Claim& claim) {
  return claim_total(claim, nullptr, nullptr);
}

CaseOdds case_combined_log_odds(const CaseSpec& spec) {
  CaseOdds out;
  std::vector<LogOdds> totals;
  totals.reserve(spec.claims.size());
  for (const Claim& claim : spec.claims) {
    LogOdds total = claim_posterior_log_odds(claim);
    totals.push_back(total);
    out.per_claim.emplace_back(claim.id, total);
  }
  out.combined = accumulate_log_odds(totals);
  return out;
}

double probability_from_odds(const LogOdds& odds) { return odds.probability(); }

Finding apply_standard(const LogOdds& odds, const StandardOfProof& standard) {
  if (!(standard.threshold_odds > 0.0)) {
    throw EvalError(err::kDomain, "standard threshold must be positive");
  }
  switch (odds.state()) {
    case LogOdds::State::zero:
      return Finding::not_met;
    case LogOdds::State::infinite:
      return Finding::met;
    case LogOdds::State::finite:
      return odds.log_value() > std::log(standard.threshold_odds) ? Finding::met
                                                                  : Finding::not_met;
  }
  return Finding::not_met;
}

std::string_view finding_name(Finding finding) {
  return finding == Finding::met ? "met" : "not_met";
}

ContributionReport explain(const CaseSpec& spec) {
  ContributionReport report;
  report.case_id = spec.case_id;

  std::vector<LogOdds> totals;
  double naive = 1.0;
  for (const Claim& claim : spec.claims) {
    ClaimContribution row;
    row.claim_id = claim.id;
    row.prior_log_odds = LogOdds::from_odds(claim.prior_odds);
    row.total = claim_total(claim, &row.groups, &row.occam_log_factor);
    totals.push_back(row.total);
    naive *= row.total.probability();
    report.claims.push_back(std::move(row));
  }
  report.combined = accumulate_log_odds(totals);
  report.naive_joint_probability = naive;
  return report;
}

namespace {

struct ResolvedTarget {
  double* slot = nullptr;
  enum class Domain { prior, lr, coverage, complexity } domain;
};

ResolvedTarget resolve_target(CaseSpec& spec, std::string_view target) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (start <= target.size()) {
    std::size_t dot = target.find('.', start);
    if (dot == std::string_view::npos) {
      parts.push_back(target.substr(start));
      break;
    }
    parts.push_back(target.substr(start, dot - start));
    start = dot + 1;
  }

  auto unknown = [&] {
    throw EvalError(err::kUnknownTarget, "no parameter at '" + std::string(target) +
                                             "' (expected <claim>.prior, <claim>.<group>.lr, "
                                             "<claim>.<group>.coverage or "
                                             "<claim>.(for|against).complexity)");
  };

  if (parts.size() < 2) unknown();
  Claim* claim = nullptr;
  for (Claim& c : spec.claims) {
    if (c.id == parts[0]) {
      claim = &c;
      break;
    }
  }
  if (!claim) unknown();

  if (parts.size() == 2 && parts[1] == "prior") {
    return {&claim->prior_odds, ResolvedTarget::Domain::prior};
  }
  if (parts.size() == 3 && (parts[1] == "for" || parts[1] == "against") &&
      parts[2] == "complexity") {
    Hypothesis& hyp = parts[1] == "for" ? claim->claimant : claim->opposing;
    return {&hyp.complexity, ResolvedTarget::Domain::complexity};
  }
  if (parts.size() == 3 && (parts[2] == "lr" || parts[2] == "coverage")) {
    for (EvidenceGroup& g : claim->groups) {
      if (g.id == parts[1]) {
        if (parts[2] == "lr") return {&g.lr, ResolvedTarget::Domain::lr};
        return {&g.coverage, ResolvedTarget::Domain::coverage};
      }
    }
  }
  unknown();
  return {};
}

}  // namespace

SweepTable sweep(const CaseSpec& spec, std::string_view target, std::span<const double> values,
                 const StandardOfProof& standard) {
  SweepTable table;
  table.target = std::string(target);

  {
    CaseSpec probe = spec;
    resolve_target(probe, target);  // UNKNOWN_TARGET before any evaluation
  }

  for (double value : values) {
    CaseSpec substituted = spec;
    ResolvedTarget slot = resolve_target(substituted, target);
    *slot.slot = value;

    ValidationReport report = validate_case(substituted);
    if (!report.ok()) {
      throw EvalError(err::kDomain, "value " + std::to_string(value) + " for '" +
                                        std::string(target) + "' leaves the case invalid: " +
                                        report.violations.front().message);
    }

    SweepRow row;
    row.value = value;
    ContributionReport contributions = explain(substituted);
    for (const ClaimContribution& claim : contributions.claims) {
      row.per_claim.emplace_back(claim.claim_id, claim.total);
      row.findings.push_back(apply_standard(claim.total, standard));
    }
    row.combined = contributions.combined;
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace plaus
