#include "plaus/coherence.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include "plaus/inference.hpp"
#include "plaus/parser.hpp"
#include "plaus/validate.hpp"

namespace plaus {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

CheckResult finish(std::string name, std::vector<std::string> witnesses) {
  CheckResult result;
  result.name = std::move(name);
  result.witnesses = std::move(witnesses);
  result.passed = result.witnesses.empty();
  return result;
}

std::map<std::string, LogOdds> totals_by_claim(const CaseSpec& spec, LogOdds* combined) {
  ContributionReport report = explain(spec);
  std::map<std::string, LogOdds> totals;
  for (const ClaimContribution& claim : report.claims) totals[claim.claim_id] = claim.total;
  if (combined) *combined = report.combined;
  return totals;
}

bool same_log_odds(const LogOdds& a, const LogOdds& b, double tol) {
  if (a.state() != b.state()) return false;
  if (!a.is_finite()) return true;
  return std::abs(a.log_value() - b.log_value()) <= tol;
}

std::string unused_id(const CaseSpec& spec, const std::string& stem) {
  auto taken = [&spec](const std::string& id) {
    for (const auto& bg : spec.background) {
      if (bg.id == id) return true;
    }
    for (const auto& c : spec.claims) {
      if (c.id == id || c.claimant.id == id || c.opposing.id == id) return true;
      for (const auto& g : c.groups) {
        if (g.id == id) return true;
        for (const auto& item : g.items) {
          if (item.id == id) return true;
        }
      }
    }
    return false;
  };
  std::string candidate = stem;
  for (int n = 2; taken(candidate); ++n) candidate = stem + "-" + std::to_string(n);
  return candidate;
}

EvidenceGroup probe_group(const CaseSpec& spec, double lr, const char* stem) {
  EvidenceGroup group;
  group.id = unused_id(spec, std::string(stem) + "-g");
  EvidenceItem item;
  item.id = unused_id(spec, std::string(stem) + "-e");
  item.description = "coherence probe";
  group.items.push_back(std::move(item));
  group.lr = lr;
  return group;
}

}  // namespace

std::vector<CheckResult> check_case_coherence(const CaseSpec& spec,
                                              const CoherenceOptions& options) {
  std::vector<CheckResult> results;
  std::mt19937_64 rng(options.seed);

  LogOdds base_combined;
  const std::map<std::string, LogOdds> base = totals_by_claim(spec, &base_combined);

  // (a) permutation invariance of every reported total
  {
    std::vector<std::string> witnesses;
    for (int trial = 0; trial < options.trials; ++trial) {
      CaseSpec shuffled = spec;
      std::shuffle(shuffled.claims.begin(), shuffled.claims.end(), rng);
      for (Claim& claim : shuffled.claims) {
        std::shuffle(claim.groups.begin(), claim.groups.end(), rng);
        for (EvidenceGroup& group : claim.groups) {
          std::shuffle(group.items.begin(), group.items.end(), rng);
        }
      }
      LogOdds combined;
      const std::map<std::string, LogOdds> totals = totals_by_claim(shuffled, &combined);
      for (const auto& [claim_id, total] : totals) {
        if (!same_log_odds(total, base.at(claim_id), options.log_tol)) {
          witnesses.push_back("trial " + std::to_string(trial) + ": claim '" + claim_id +
                              "' moved under permutation");
        }
      }
      if (!same_log_odds(combined, base_combined, options.log_tol)) {
        witnesses.push_back("trial " + std::to_string(trial) + ": combined odds moved under permutation");
      }
      if (!witnesses.empty()) break;
    }
    results.push_back(finish("permutation_invariance", std::move(witnesses)));
  }

  // (b) no double counting: the groups must partition the evidence items
  {
    std::vector<std::string> witnesses;
    const ValidationReport report = validate_case(spec);
    for (const Violation& v : report.violations) {
      if (v.code == ViolationCode::ITEM_IN_TWO_GROUPS || v.code == ViolationCode::DUPLICATE_ITEM) {
        witnesses.push_back(v.message);
      }
    }
    results.push_back(finish("no_double_count", std::move(witnesses)));
  }

  // (c) equivalent states of knowledge: the canonical text form evaluates
  // identically, bit for bit
  {
    std::vector<std::string> witnesses;
    const std::string text = serialize_case(spec);
    ParseResult reparsed = parse_case(text);
    if (!reparsed.ok()) {
      witnesses.push_back("serialized case does not reparse: " +
                          (reparsed.diagnostics.empty() ? std::string("no diagnostics")
                                                        : reparsed.diagnostics.front().message));
    } else {
      if (!(*reparsed.spec == spec)) {
        witnesses.push_back("round-tripped case is not structurally equal to the original");
      }
      LogOdds combined;
      const std::map<std::string, LogOdds> totals = totals_by_claim(*reparsed.spec, &combined);
      for (const auto& [claim_id, total] : totals) {
        if (!(total == base.at(claim_id))) {
          witnesses.push_back("claim '" + claim_id + "' evaluates differently after a round trip");
        }
      }
      if (!(combined == base_combined)) {
        witnesses.push_back("combined odds evaluate differently after a round trip");
      }
    }
    results.push_back(finish("roundtrip_equivalence", std::move(witnesses)));
  }

  // (d) qualitative correspondence: neutral evidence changes nothing,
  // supporting evidence strictly raises finite odds
  {
    std::vector<std::string> witnesses;
    for (std::size_t ci = 0; ci < spec.claims.size(); ++ci) {
      CaseSpec neutral = spec;
      neutral.claims[ci].groups.push_back(probe_group(spec, 1.0, "probe-neutral"));
      const std::map<std::string, LogOdds> with_neutral = totals_by_claim(neutral, nullptr);
      const LogOdds& before = base.at(spec.claims[ci].id);
      const LogOdds& after_neutral = with_neutral.at(spec.claims[ci].id);
      if (!same_log_odds(after_neutral, before, options.log_tol)) {
        witnesses.push_back("claim '" + spec.claims[ci].id +
                            "': lr=1 evidence moved the total from " +
                            (before.is_finite() ? fmt(before.log_value()) : "non-finite") + " to " +
                            (after_neutral.is_finite() ? fmt(after_neutral.log_value()) : "non-finite"));
      }

      if (before.is_finite()) {
        CaseSpec supported = spec;
        supported.claims[ci].groups.push_back(probe_group(spec, 2.0, "probe-support"));
        const std::map<std::string, LogOdds> with_support = totals_by_claim(supported, nullptr);
        const LogOdds& after_support = with_support.at(spec.claims[ci].id);
        if (!after_support.is_finite() || !(after_support.log_value() > before.log_value())) {
          witnesses.push_back("claim '" + spec.claims[ci].id +
                              "': lr=2 evidence failed to raise the total");
        }
      }
    }
    results.push_back(finish("qualitative_correspondence", std::move(witnesses)));
  }

  return results;
}

std::vector<CheckResult> check_case_coherence(const CaseSpec& spec, int trials,
                                              std::uint64_t seed) {
  CoherenceOptions options;
  options.trials = trials;
  options.seed = seed;
  return check_case_coherence(spec, options);
}

}  // namespace plaus
