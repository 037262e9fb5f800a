#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include <json.hpp>

#include "plaus/coherence.hpp"
#include "plaus/inference.hpp"
#include "plaus/model.hpp"

namespace plaus {

// One JSON envelope (schema plaus-report-v1, see schemas/report.schema.json)
// for evaluations, coherence checks, and sweeps, plus aligned plain-text
// renderings of the same content. Output is deterministic byte for byte.

nlohmann::ordered_json evaluation_to_json(const CaseSpec& spec, const ContributionReport& report,
                                          const StandardOfProof& standard);
void evaluation_to_text(std::ostream& out, const CaseSpec& spec, const ContributionReport& report,
                        const StandardOfProof& standard);

nlohmann::ordered_json checks_to_json(const std::string& case_id,
                                      std::span<const CheckResult> checks);
void checks_to_text(std::ostream& out, const std::string& case_id,
                    std::span<const CheckResult> checks);

nlohmann::ordered_json sweep_to_json(const CaseSpec& spec, const SweepTable& table,
                                     const StandardOfProof& standard);
void sweep_to_text(std::ostream& out, const CaseSpec& spec, const SweepTable& table,
                   const StandardOfProof& standard);

// The four-facet odds block shared by every envelope.
nlohmann::ordered_json odds_block(const LogOdds& odds);

}  // namespace plaus
