#include "plaus/model.hpp"

namespace plaus {

std::string_view evidence_kind_name(EvidenceKind kind) {
  switch (kind) {
    case EvidenceKind::testimony:
      return "testimony";
    case EvidenceKind::physical:
      return "physical";
    case EvidenceKind::documentary:
      return "documentary";
    case EvidenceKind::other:
      return "other";
  }
  return "other";
}

std::string_view assumption_kind_name(AssumptionKind kind) {
  return kind == AssumptionKind::stipulation ? "stipulation" : "general_knowledge";
}

std::string_view standard_kind_name(StandardKind kind) {
  switch (kind) {
    case StandardKind::preponderance:
      return "preponderance";
    case StandardKind::clear_and_convincing:
      return "clear_and_convincing";
    case StandardKind::beyond_reasonable_doubt:
      return "beyond_reasonable_doubt";
    case StandardKind::custom:
      return "custom";
  }
  return "preponderance";
}

std::optional<EvidenceKind> evidence_kind_from(std::string_view name) {
  if (name == "testimony") return EvidenceKind::testimony;
  if (name == "physical") return EvidenceKind::physical;
  if (name == "documentary") return EvidenceKind::documentary;
  if (name == "other") return EvidenceKind::other;
  return std::nullopt;
}

std::optional<StandardKind> standard_kind_from(std::string_view name) {
  if (name == "preponderance") return StandardKind::preponderance;
  if (name == "clear_and_convincing") return StandardKind::clear_and_convincing;
  if (name == "beyond_reasonable_doubt") return StandardKind::beyond_reasonable_doubt;
  if (name == "custom") return StandardKind::custom;
  return std::nullopt;
}

}  // namespace plaus
