#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "plaus/model.hpp"
#include "plaus/world.hpp"

namespace plaus {

struct CheckResult {
  std::string name;
  bool passed = true;  // kept equal to witnesses.empty()
  std::vector<std::string> witnesses;
};

// Exact likelihood ratio of the observed outcomes of `subset`, by compensated
// summation over every unobserved combination, in canonical row-major order.
// Marginal 0 under D with positive mass under P is the infinite ratio; both
// marginals 0 raise UNDEFINED_LR. Every subset variable must be observed.
double oracle_lr(const DiscreteWorld& world, std::span<const std::string> subset);

// Chain-rule identity along one ordering of the observed variables: the joint
// marginal must match the product of sequential conditionals (1e-12 relative)
// under both tables, and the full-set LR recovered through the chain must
// match the canonical oracle_lr.
CheckResult check_chain_rule(const DiscreteWorld& world, std::span<const std::string> ordering);

// The comparison seam check_chain_rule is built on, separated so tests can
// feed it deliberately mismatched factors.
CheckResult verify_chain_product(double joint, std::span<const double> factors,
                                 std::string_view label, double rel_tol = 1e-12);

// group id -> the world variables whose joint evidence that group stands for.
using GroupBinding = std::map<std::string, std::vector<std::string>>;

// Confronts the engine with the enumerated ground truth: for every claim,
// log prior + sum of ln oracle_lr(bound subset) must equal the engine's
// posterior log-odds within 1e-12. Preconditions (full coverage, no Occam
// asymmetry, bound subsets independent under both tables) are themselves
// checked and reported as witnesses; a group whose lr disagrees with the
// oracle is the BINDING_MISMATCH failure this check exists to expose.
CheckResult check_engine_vs_oracle(const DiscreteWorld& world, const CaseSpec& spec,
                                   const GroupBinding& binding);

}  // namespace plaus
