#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "plaus/parser.hpp"

namespace plaus {

// A small fully-enumerable joint distribution over discrete evidence
// variables, one probability table per hypothesis. This is the ground-truth
// side of the engine-versus-oracle checks, so it is exact by construction:
// no sampling, and worlds past the enumeration cap are rejected outright.
struct WorldVariable {
  std::string id;
  std::vector<std::string> outcomes;  // nonempty, unique

  bool operator==(const WorldVariable&) const = default;
};

struct DiscreteWorld {
  static constexpr std::size_t kMaxCombos = std::size_t{1} << 20;

  std::string world_id;
  std::vector<WorldVariable> variables;
  // Row-major over the variables in declaration order, last variable fastest.
  std::vector<double> mass_p;
  std::vector<double> mass_d;
  std::map<std::string, std::string> observed;  // variable id -> outcome

  std::size_t combo_count() const;
  std::optional<std::size_t> variable_index(std::string_view id) const;
  // Index arithmetic for the row-major layout.
  std::size_t stride(std::size_t var_index) const;
  std::size_t outcome_index(std::size_t var_index, std::string_view outcome) const;
};

struct WorldParseResult {
  std::optional<DiscreteWorld> world;
  std::vector<ParseDiagnostic> diagnostics;

  bool ok() const { return world.has_value(); }
};

// Reads `.world` text: `world "<id>"`, `var <id> { <outcome>+ }`,
// `observe <var> <outcome>`, and one `mass P|D <outcome per var> <p>` row per
// combination (rows left out are mass 0). Masses are validated on load: each
// >= 0, each table summing to 1 within 1e-12, no duplicate rows.
WorldParseResult parse_world(std::string_view source);

// Same checks for worlds built in code; message list is empty when sound.
std::vector<std::string> validate_world(const DiscreteWorld& world);

}  // namespace plaus
