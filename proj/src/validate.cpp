#include "plaus/validate.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace plaus {

namespace {

bool is_conclusive(double lr) { return lr == 0.0 || std::isinf(lr); }

std::string join_sorted(std::set<std::string> parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += ", ";
    out += p;
  }
  return out;
}

}  // namespace

bool ValidationReport::has(ViolationCode code) const {
  return std::any_of(violations.begin(), violations.end(),
                     [code](const Violation& v) { return v.code == code; });
}

std::string_view violation_code_name(ViolationCode code) {
  switch (code) {
    case ViolationCode::DUPLICATE_ITEM: return "DUPLICATE_ITEM";
    case ViolationCode::ITEM_IN_TWO_GROUPS: return "ITEM_IN_TWO_GROUPS";
    case ViolationCode::COVERAGE_OUT_OF_RANGE: return "COVERAGE_OUT_OF_RANGE";
    case ViolationCode::NEGATIVE_LR: return "NEGATIVE_LR";
    case ViolationCode::COMPLEXITY_LT_ONE: return "COMPLEXITY_LT_ONE";
    case ViolationCode::EMPTY_CLAIM: return "EMPTY_CLAIM";
    case ViolationCode::EMPTY_GROUP: return "EMPTY_GROUP";
    case ViolationCode::DUPLICATE_CLAIM: return "DUPLICATE_CLAIM";
    case ViolationCode::DUPLICATE_GROUP: return "DUPLICATE_GROUP";
    case ViolationCode::DUPLICATE_ASSUMPTION: return "DUPLICATE_ASSUMPTION";
    case ViolationCode::INVALID_PRIOR: return "INVALID_PRIOR";
    case ViolationCode::NONFINITE_WITH_COVERAGE: return "NONFINITE_WITH_COVERAGE";
    case ViolationCode::CONTRADICTORY_CONCLUSIVES: return "CONTRADICTORY_CONCLUSIVES";
    case ViolationCode::UNKNOWN_ASSUMPTION: return "UNKNOWN_ASSUMPTION";
    case ViolationCode::BAD_IDENTIFIER: return "BAD_IDENTIFIER";
  }
  return "UNKNOWN";
}

bool reserved_word(std::string_view word) {
  static const std::array<std::string_view, 20> kReserved = {
      "case",    "question", "standard", "assume",   "stipulated", "claim", "for",
      "against", "complexity", "prior_odds", "group", "coverage", "evidence", "kind",
      "lr",      "label",    "because",  "given",    "inf",        "prior"};
  return std::find(kReserved.begin(), kReserved.end(), word) != kReserved.end();
}

bool valid_identifier(std::string_view id) {
  if (id.empty()) return false;
  const unsigned char head = static_cast<unsigned char>(id.front());
  if (!std::isalpha(head) && head != '_') return false;
  for (char c : id.substr(1)) {
    const unsigned char u = static_cast<unsigned char>(c);
    if (!std::isalnum(u) && u != '_' && u != '-') return false;
  }
  return !reserved_word(id);
}

ValidationReport validate_case(const CaseSpec& spec) {
  std::vector<Violation> out;
  auto add = [&out](ViolationCode code, std::string subject, std::string message) {
    out.push_back(Violation{code, std::move(subject), std::move(message)});
  };

  auto check_id = [&](std::string_view what, const std::string& id) {
    if (!valid_identifier(id)) {
      add(ViolationCode::BAD_IDENTIFIER, id,
          std::string(what) + " id '" + id + "' is not a valid identifier");
    }
  };

  if (spec.claims.empty()) {
    add(ViolationCode::EMPTY_CLAIM, spec.case_id, "case has no claims");
  }

  std::set<std::string> background_ids;
  std::set<std::string> stipulation_ids;
  for (const auto& bg : spec.background) {
    check_id("background assumption", bg.id);
    if (!background_ids.insert(bg.id).second) {
      add(ViolationCode::DUPLICATE_ASSUMPTION, bg.id,
          "background assumption id '" + bg.id + "' declared twice");
    }
    if (bg.kind == AssumptionKind::stipulation) stipulation_ids.insert(bg.id);
  }

  // Evidence item id -> set of "claim/group" sites referencing it.
  std::map<std::string, std::set<std::string>> item_sites;
  std::map<std::string, int> item_in_group_dups;  // same id repeated inside one group
  std::set<std::string> claim_ids;

  for (const auto& claim : spec.claims) {
    check_id("claim", claim.id);
    if (!claim_ids.insert(claim.id).second) {
      add(ViolationCode::DUPLICATE_CLAIM, claim.id, "claim id '" + claim.id + "' declared twice");
    }

    for (const Hypothesis* hyp : {&claim.claimant, &claim.opposing}) {
      check_id("hypothesis", hyp->id);
      if (hyp->statement.empty()) {
        add(ViolationCode::EMPTY_CLAIM, claim.id,
            "hypothesis '" + hyp->id + "' has an empty statement; each side must state a substantive account");
      }
      if (std::isnan(hyp->complexity) || hyp->complexity < 1.0 || std::isinf(hyp->complexity)) {
        add(ViolationCode::COMPLEXITY_LT_ONE, hyp->id,
            "complexity of hypothesis '" + hyp->id + "' must be a finite real >= 1");
      }
    }

    if (std::isnan(claim.prior_odds) || claim.prior_odds < 0.0) {
      add(ViolationCode::INVALID_PRIOR, claim.id,
          "prior odds of claim '" + claim.id + "' must be >= 0 or infinite");
    }

    bool has_zero = claim.prior_odds == 0.0;
    bool has_infinite = std::isinf(claim.prior_odds) && claim.prior_odds > 0.0;

    std::set<std::string> group_ids;
    for (const auto& group : claim.groups) {
      check_id("group", group.id);
      if (!group_ids.insert(group.id).second) {
        add(ViolationCode::DUPLICATE_GROUP, group.id,
            "group id '" + group.id + "' declared twice in claim '" + claim.id + "'");
      }
      if (group.items.empty()) {
        add(ViolationCode::EMPTY_GROUP, group.id, "group '" + group.id + "' has no evidence items");
      }
      if (std::isnan(group.coverage) || group.coverage <= 0.0 || group.coverage > 1.0) {
        add(ViolationCode::COVERAGE_OUT_OF_RANGE, group.id,
            "coverage of group '" + group.id + "' must lie in (0, 1]");
      }
      if (std::isnan(group.lr) || group.lr < 0.0) {
        add(ViolationCode::NEGATIVE_LR, group.id,
            "likelihood ratio of group '" + group.id + "' must be >= 0 or inf");
      } else if (is_conclusive(group.lr)) {
        if (group.coverage < 1.0) {
          add(ViolationCode::NONFINITE_WITH_COVERAGE, group.id,
              "group '" + group.id + "' has conclusive lr with coverage < 1; a conclusive ratio cannot be discounted");
        }
        if (group.lr == 0.0) has_zero = true;
        if (std::isinf(group.lr)) has_infinite = true;
      }

      std::set<std::string> in_this_group;
      for (const auto& item : group.items) {
        check_id("evidence item", item.id);
        if (!in_this_group.insert(item.id).second) {
          item_in_group_dups[item.id]++;
        }
        item_sites[item.id].insert(claim.id + "/" + group.id);
      }

      for (const auto& ref : group.conditions_on) {
        if (!background_ids.count(ref)) {
          add(ViolationCode::UNKNOWN_ASSUMPTION, ref,
              "group '" + group.id + "' conditions on undeclared background assumption '" + ref + "'");
        }
      }
    }

    if (has_zero && has_infinite) {
      add(ViolationCode::CONTRADICTORY_CONCLUSIVES, claim.id,
          "claim '" + claim.id + "' combines a conclusive-zero and a conclusive-infinite contribution");
    }
  }

  for (const auto& [id, sites] : item_sites) {
    if (sites.size() > 1) {
      add(ViolationCode::ITEM_IN_TWO_GROUPS, id,
          "evidence item '" + id + "' appears in groups " + join_sorted(sites) +
              "; groups must partition the evidence");
    }
    if (stipulation_ids.count(id)) {
      add(ViolationCode::DUPLICATE_ITEM, id,
          "id '" + id + "' is both a stipulation and an evidence item");
    }
  }
  for (const auto& [id, extra] : item_in_group_dups) {
    add(ViolationCode::DUPLICATE_ITEM, id, "evidence item id '" + id + "' declared more than once in a group");
  }

  // Cross-claim conclusive conflict: one claim conclusively zero and another
  // conclusively infinite leaves the combined odds undefined.
  {
    bool any_zero = false;
    bool any_infinite = false;
    for (const auto& claim : spec.claims) {
      bool z = claim.prior_odds == 0.0;
      bool inf = std::isinf(claim.prior_odds);
      for (const auto& g : claim.groups) {
        if (g.lr == 0.0) z = true;
        if (std::isinf(g.lr)) inf = true;
      }
      if (z && !inf) any_zero = true;
      if (inf && !z) any_infinite = true;
    }
    if (any_zero && any_infinite) {
      add(ViolationCode::CONTRADICTORY_CONCLUSIVES, spec.case_id,
          "combined case odds are undefined: one claim is conclusively zero and another conclusively infinite");
    }
  }

  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return ValidationReport{std::move(out)};
}

}  // namespace plaus
