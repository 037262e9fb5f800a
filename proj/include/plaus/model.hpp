#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace plaus {

// Domain model for a case: the question, the competing explanations, and the
// evidence assessed against them. All types are plain immutable-after-build
// values; every numeric default (prior 1, coverage 1, complexity 1) is the
// neutral element of its combination rule.

enum class EvidenceKind { testimony, physical, documentary, other };
enum class AssumptionKind { general_knowledge, stipulation };
enum class StandardKind { preponderance, clear_and_convincing, beyond_reasonable_doubt, custom };

struct EvidenceItem {
  std::string id;  // unique case-wide
  std::string description;
  EvidenceKind kind = EvidenceKind::other;

  bool operator==(const EvidenceItem&) const = default;
};

// A body of evidence assessed jointly with a single likelihood ratio.
// Item-level assessment is the singleton-group special case.
struct EvidenceGroup {
  std::string id;
  std::vector<EvidenceItem> items;        // nonempty; declared inline
  double lr = 1.0;                        // P(E|H_P,K)/P(E|H_D,K); >= 0, +inf = conclusive
  double coverage = 1.0;                  // exponent c in (0,1]; 1 = complete evidence
  std::string rationale;                  // optional free text
  std::vector<std::string> conditions_on; // background assumption ids this LR leans on

  bool operator==(const EvidenceGroup&) const = default;
};

struct Hypothesis {
  std::string id;
  std::string statement;  // nonempty: a substantive account, not a bare denial
  double complexity = 1.0; // Occam penalty weight F >= 1
  std::vector<std::string> assumptions;

  bool operator==(const Hypothesis&) const = default;
};

// One proposition pair: the claimant's explanation against the opposing one.
struct Claim {
  std::string id;
  Hypothesis claimant;
  Hypothesis opposing;
  double prior_odds = 1.0;  // 0 and +inf are the conclusive prior states
  std::vector<EvidenceGroup> groups;  // groups partition the claim's items

  bool operator==(const Claim&) const = default;
};

struct BackgroundAssumption {
  std::string id;
  std::string text;
  AssumptionKind kind = AssumptionKind::general_knowledge;

  bool operator==(const BackgroundAssumption&) const = default;
};

struct CaseSpec {
  std::string case_id;
  std::string question;
  std::vector<BackgroundAssumption> background;
  std::vector<Claim> claims;  // nonempty
  StandardKind standard = StandardKind::preponderance;

  bool operator==(const CaseSpec&) const = default;
};

// A decision threshold on posterior odds. Comparison is strict-greater
// everywhere: ties leave the burden unmet.
struct StandardOfProof {
  StandardKind kind = StandardKind::preponderance;
  std::string name = "preponderance";
  double threshold_odds = 1.0;  // > 0

  bool operator==(const StandardOfProof&) const = default;
};

std::string_view evidence_kind_name(EvidenceKind kind);
std::string_view assumption_kind_name(AssumptionKind kind);
std::string_view standard_kind_name(StandardKind kind);
std::optional<EvidenceKind> evidence_kind_from(std::string_view name);
std::optional<StandardKind> standard_kind_from(std::string_view name);

}  // namespace plaus
