#include "plaus/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace plaus {

namespace {

using nlohmann::ordered_json;

std::string gen6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// ln / log10 / odds / probability strings for one LogOdds, conclusive states
// spelled out.
struct OddsText {
  std::string ln, lg, odds, prob;
};

OddsText odds_text(const LogOdds& value) {
  switch (value.state()) {
    case LogOdds::State::zero:
      return {"-inf", "-inf", "0", "0"};
    case LogOdds::State::infinite:
      return {"+inf", "+inf", "inf", "1"};
    case LogOdds::State::finite:
      return {gen6(value.log_value()), gen6(value.log10_value()), gen6(value.odds()),
              gen6(value.probability())};
  }
  return {};
}

ordered_json number_or_null(double v) {
  if (std::isnan(v) || std::isinf(v)) return nullptr;
  return v;
}

ordered_json standard_json(const StandardOfProof& standard) {
  return ordered_json{{"name", standard.name}, {"threshold_odds", standard.threshold_odds}};
}

ordered_json lr_json(double lr) {
  if (std::isinf(lr)) return "inf";
  return lr;
}

void print_row(std::ostream& out, const std::string& label, const OddsText& t,
               const char* suffix = "") {
  char buf[256];
  std::snprintf(buf, sizeof buf, "  %-30s %12s %12s %12s %12s%s\n", label.c_str(), t.ln.c_str(),
                t.lg.c_str(), t.odds.c_str(), t.prob.c_str(), suffix);
  out << buf;
}

}  // namespace

ordered_json odds_block(const LogOdds& odds) {
  ordered_json block;
  switch (odds.state()) {
    case LogOdds::State::zero:
      block["state"] = "zero";
      block["log_odds"] = nullptr;
      block["log10_odds"] = nullptr;
      block["odds"] = 0.0;
      break;
    case LogOdds::State::infinite:
      block["state"] = "infinite";
      block["log_odds"] = nullptr;
      block["log10_odds"] = nullptr;
      block["odds"] = nullptr;
      break;
    case LogOdds::State::finite:
      block["state"] = "finite";
      block["log_odds"] = odds.log_value();
      block["log10_odds"] = odds.log10_value();
      block["odds"] = number_or_null(odds.odds());
      break;
  }
  block["probability"] = odds.probability();
  return block;
}

ordered_json evaluation_to_json(const CaseSpec& spec, const ContributionReport& report,
                                const StandardOfProof& standard) {
  ordered_json root;
  root["schema"] = "plaus-report-v1";
  root["kind"] = "evaluation";
  root["case_id"] = spec.case_id;
  root["question"] = spec.question;
  root["standard"] = standard_json(standard);

  root["background"] = ordered_json::array();
  for (const BackgroundAssumption& bg : spec.background) {
    root["background"].push_back({{"id", bg.id},
                                  {"text", bg.text},
                                  {"kind", std::string(assumption_kind_name(bg.kind))}});
  }

  root["claims"] = ordered_json::array();
  for (std::size_t i = 0; i < spec.claims.size(); ++i) {
    const Claim& claim = spec.claims[i];
    const ClaimContribution& contrib = report.claims[i];
    ordered_json jc;
    jc["id"] = claim.id;
    jc["claimant"] = {{"id", claim.claimant.id},
                      {"statement", claim.claimant.statement},
                      {"complexity", claim.claimant.complexity}};
    jc["opposing"] = {{"id", claim.opposing.id},
                      {"statement", claim.opposing.statement},
                      {"complexity", claim.opposing.complexity}};
    jc["prior"] = odds_block(contrib.prior_log_odds);
    jc["groups"] = ordered_json::array();
    for (std::size_t g = 0; g < claim.groups.size(); ++g) {
      const EvidenceGroup& group = claim.groups[g];
      const GroupContribution& gc = contrib.groups[g];
      ordered_json jg;
      jg["id"] = group.id;
      jg["items"] = ordered_json::array();
      for (const EvidenceItem& item : group.items) {
        jg["items"].push_back({{"id", item.id},
                               {"description", item.description},
                               {"kind", std::string(evidence_kind_name(item.kind))}});
      }
      jg["lr"] = lr_json(group.lr);
      jg["coverage"] = group.coverage;
      jg["raw_log_lr"] = gc.raw_log_lr.is_finite() ? ordered_json(gc.raw_log_lr.log_value())
                                                   : ordered_json(nullptr);
      jg["effective_log_lr"] = gc.effective_log_lr.is_finite()
                                   ? ordered_json(gc.effective_log_lr.log_value())
                                   : ordered_json(nullptr);
      jg["rationale"] = group.rationale;
      jg["conditions_on"] = group.conditions_on;
      jc["groups"].push_back(std::move(jg));
    }
    jc["occam_log_factor"] = contrib.occam_log_factor;
    jc["posterior"] = odds_block(contrib.total);
    jc["finding"] = std::string(finding_name(apply_standard(contrib.total, standard)));
    root["claims"].push_back(std::move(jc));
  }

  root["combined"] = odds_block(report.combined);
  root["naive_joint_probability"] = report.naive_joint_probability;
  return root;
}

void evaluation_to_text(std::ostream& out, const CaseSpec& spec, const ContributionReport& report,
                        const StandardOfProof& standard) {
  out << "case \"" << spec.case_id << "\"\n";
  if (!spec.question.empty()) out << "question: " << spec.question << "\n";
  out << "standard: " << standard.name << " (odds must exceed " << gen6(standard.threshold_odds)
      << ")\n";
  if (!spec.background.empty()) {
    out << "background:\n";
    for (const BackgroundAssumption& bg : spec.background) {
      out << "  " << bg.id << " (" << assumption_kind_name(bg.kind) << "): " << bg.text << "\n";
    }
  }

  for (std::size_t i = 0; i < spec.claims.size(); ++i) {
    const Claim& claim = spec.claims[i];
    const ClaimContribution& contrib = report.claims[i];
    out << "\nclaim " << claim.id << "\n";
    out << "  for     " << claim.claimant.id << ": " << claim.claimant.statement << "\n";
    out << "  against " << claim.opposing.id << ": " << claim.opposing.statement << "\n";
    {
      char buf[256];
      std::snprintf(buf, sizeof buf, "  %-30s %12s %12s %12s %12s\n", "", "ln odds", "log10",
                    "odds", "probability");
      out << buf;
    }
    print_row(out, "prior", odds_text(contrib.prior_log_odds));
    for (const GroupContribution& gc : contrib.groups) {
      std::string label = "group " + gc.group_id;
      if (gc.coverage != 1.0) label += " (c=" + gen6(gc.coverage) + ")";
      print_row(out, label, odds_text(gc.effective_log_lr));
    }
    print_row(out, "occam factor",
              odds_text(LogOdds::from_log(contrib.occam_log_factor)));
    const Finding finding = apply_standard(contrib.total, standard);
    const std::string suffix = std::string("  -> ") + std::string(finding_name(finding));
    print_row(out, "posterior", odds_text(contrib.total), suffix.c_str());
  }

  out << "\n";
  print_row(out, "combined (informational)", odds_text(report.combined));
  out << "  naive joint probability: " << gen6(report.naive_joint_probability)
      << " (per-claim findings above are what the standard gates)\n";
}

ordered_json checks_to_json(const std::string& case_id, std::span<const CheckResult> checks) {
  ordered_json root;
  root["schema"] = "plaus-report-v1";
  root["kind"] = "coherence";
  root["case_id"] = case_id;
  root["checks"] = ordered_json::array();
  bool all = true;
  for (const CheckResult& check : checks) {
    root["checks"].push_back(
        {{"name", check.name}, {"passed", check.passed}, {"witnesses", check.witnesses}});
    all = all && check.passed;
  }
  root["all_passed"] = all;
  return root;
}

void checks_to_text(std::ostream& out, const std::string& case_id,
                    std::span<const CheckResult> checks) {
  out << "case \"" << case_id << "\": coherence checks\n";
  bool all = true;
  for (const CheckResult& check : checks) {
    out << "  [" << (check.passed ? "PASS" : "FAIL") << "] " << check.name << "\n";
    for (const std::string& witness : check.witnesses) {
      out << "         " << witness << "\n";
    }
    all = all && check.passed;
  }
  out << (all ? "all checks passed\n" : "CHECKS FAILED\n");
}

ordered_json sweep_to_json(const CaseSpec& spec, const SweepTable& table,
                           const StandardOfProof& standard) {
  ordered_json root;
  root["schema"] = "plaus-report-v1";
  root["kind"] = "sweep";
  root["case_id"] = spec.case_id;
  root["standard"] = standard_json(standard);
  root["target"] = table.target;
  root["rows"] = ordered_json::array();
  for (const SweepRow& row : table.rows) {
    ordered_json jr;
    jr["value"] = row.value;
    jr["claims"] = ordered_json::array();
    for (std::size_t i = 0; i < row.per_claim.size(); ++i) {
      jr["claims"].push_back({{"id", row.per_claim[i].first},
                              {"posterior", odds_block(row.per_claim[i].second)},
                              {"finding", std::string(finding_name(row.findings[i]))}});
    }
    jr["combined"] = odds_block(row.combined);
    root["rows"].push_back(std::move(jr));
  }
  return root;
}

void sweep_to_text(std::ostream& out, const CaseSpec& spec, const SweepTable& table,
                   const StandardOfProof& standard) {
  out << "case \"" << spec.case_id << "\": sweep over " << table.target << " (standard "
      << standard.name << ", threshold " << gen6(standard.threshold_odds) << ")\n";
  char buf[256];
  std::snprintf(buf, sizeof buf, "  %-14s %s\n", "value", "per-claim odds and findings");
  out << buf;
  for (const SweepRow& row : table.rows) {
    std::string cells;
    for (std::size_t i = 0; i < row.per_claim.size(); ++i) {
      const OddsText t = odds_text(row.per_claim[i].second);
      cells += row.per_claim[i].first + "=" + t.odds + " (" +
               std::string(finding_name(row.findings[i])) + ")  ";
    }
    const OddsText combined = odds_text(row.combined);
    std::snprintf(buf, sizeof buf, "  %-14s %scombined=%s\n", gen6(row.value).c_str(),
                  cells.c_str(), combined.odds.c_str());
    out << buf;
  }
}

}  // namespace plaus
