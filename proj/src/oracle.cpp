#include "plaus/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "plaus/errors.hpp"
#include "plaus/inference.hpp"
#include "plaus/kahan.hpp"

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

// Marginal mass of the observed outcomes of `subset`, summing out everything
// else in canonical row-major order.
double observed_marginal(const DiscreteWorld& world, const std::vector<double>& table,
                         std::span<const std::string> subset) {
  struct Fixed {
    std::size_t stride;
    std::size_t outcome;
    std::size_t cardinality;
  };
  std::vector<Fixed> fixed;
  fixed.reserve(subset.size());
  for (const std::string& var : subset) {
    auto idx = world.variable_index(var);
    if (!idx) throw EvalError(err::kDomain, "subset variable '" + var + "' is not in the world");
    auto obs = world.observed.find(var);
    if (obs == world.observed.end()) {
      throw EvalError(err::kDomain, "subset variable '" + var + "' has no observed outcome");
    }
    const std::size_t oi = world.outcome_index(*idx, obs->second);
    fixed.push_back({world.stride(*idx), oi, world.variables[*idx].outcomes.size()});
  }

  KahanSum sum;
  const std::size_t combos = world.combo_count();
  for (std::size_t index = 0; index < combos; ++index) {
    bool matches = true;
    for (const Fixed& f : fixed) {
      if ((index / f.stride) % f.cardinality != f.outcome) {
        matches = false;
        break;
      }
    }
    if (matches) sum.add(table[index]);
  }
  return sum.value();
}

bool close_rel(double a, double b, double rel_tol) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) <= rel_tol * scale;
}

}  // namespace

double oracle_lr(const DiscreteWorld& world, std::span<const std::string> subset) {
  std::set<std::string> unique(subset.begin(), subset.end());
  if (unique.size() != subset.size()) {
    throw EvalError(err::kDomain, "subset lists a variable twice");
  }
  const double num = observed_marginal(world, world.mass_p, subset);
  const double den = observed_marginal(world, world.mass_d, subset);
  if (num == 0.0 && den == 0.0) {
    throw EvalError(err::kUndefinedLr,
                    "observed subset has zero mass under both hypotheses; the ratio is undefined");
  }
  if (den == 0.0) return std::numeric_limits<double>::infinity();
  return num / den;
}

CheckResult verify_chain_product(double joint, std::span<const double> factors,
                                 std::string_view label, double rel_tol) {
  std::vector<std::string> witnesses;
  double product = 1.0;
  for (double f : factors) product *= f;
  if (!close_rel(product, joint, rel_tol)) {
    std::ostringstream os;
    os << label << ": product of sequential conditionals " << fmt(product)
       << " != joint marginal " << fmt(joint);
    witnesses.push_back(os.str());
  }
  return finish("chain_rule", std::move(witnesses));
}

CheckResult check_chain_rule(const DiscreteWorld& world, std::span<const std::string> ordering) {
  std::vector<std::string> witnesses;

  std::set<std::string> observed_ids;
  for (const auto& [var, _] : world.observed) observed_ids.insert(var);
  std::set<std::string> ordering_ids(ordering.begin(), ordering.end());
  if (ordering_ids != observed_ids || ordering_ids.size() != ordering.size()) {
    throw EvalError(err::kDomain, "ordering must be a permutation of the observed variables");
  }

  for (const auto& [label, table] : {std::pair{"P", &world.mass_p}, std::pair{"D", &world.mass_d}}) {
    std::vector<std::string> prefix;
    std::vector<double> factors;
    double previous = 1.0;  // empty-prefix marginal
    bool truncated = false;
    for (const std::string& var : ordering) {
      prefix.push_back(var);
      const double current = observed_marginal(world, *table, prefix);
      if (previous == 0.0) {
        // conditional undefined beyond a zero prefix; the joint must stay 0
        if (current != 0.0) {
          witnesses.push_back(std::string("table ") + label +
                              ": marginal rose after a zero prefix at '" + var + "'");
        }
        truncated = true;
        break;
      }
      factors.push_back(current / previous);
      previous = current;
    }
    if (truncated) continue;
    const double joint = previous;
    CheckResult chain = verify_chain_product(
        joint, factors, std::string("table ") + label + ", ordering via '" + ordering.front() + "'");
    for (std::string& w : chain.witnesses) witnesses.push_back(std::move(w));
  }

  // The LR assembled along the chain must agree with the canonical oracle.
  const double joint_p = observed_marginal(world, world.mass_p, ordering);
  const double joint_d = observed_marginal(world, world.mass_d, ordering);
  if (joint_p != 0.0 || joint_d != 0.0) {
    const double via_chain = joint_d == 0.0 ? std::numeric_limits<double>::infinity() : joint_p / joint_d;
    const double canonical = oracle_lr(world, ordering);
    const bool both_infinite = std::isinf(via_chain) && std::isinf(canonical);
    if (!both_infinite && !close_rel(via_chain, canonical, 1e-12)) {
      witnesses.push_back("full-set LR along the ordering " + fmt(via_chain) +
                          " != canonical oracle LR " + fmt(canonical));
    }
  }
  return finish("chain_rule", std::move(witnesses));
}

CheckResult check_engine_vs_oracle(const DiscreteWorld& world, const CaseSpec& spec,
                                   const GroupBinding& binding) {
  std::vector<std::string> witnesses;

  // Preconditions: complete coverage, no Occam asymmetry, every group bound,
  // bound subsets disjoint.
  std::vector<std::pair<const Claim*, std::vector<const EvidenceGroup*>>> bound;
  std::set<std::string> used_vars;
  for (const Claim& claim : spec.claims) {
    bound.push_back({&claim, {}});
    if (claim.claimant.complexity != claim.opposing.complexity) {
      witnesses.push_back("claim '" + claim.id +
                          "' carries an Occam asymmetry; the oracle models likelihoods only");
    }
    for (const EvidenceGroup& group : claim.groups) {
      if (group.coverage != 1.0) {
        witnesses.push_back("group '" + group.id + "' has coverage " + fmt(group.coverage) +
                            "; the oracle models complete evidence only");
      }
      auto it = binding.find(group.id);
      if (it == binding.end()) {
        witnesses.push_back("group '" + group.id + "' has no bound variable subset");
        continue;
      }
      for (const std::string& var : it->second) {
        if (!used_vars.insert(var).second) {
          witnesses.push_back("variable '" + var + "' is bound to more than one group");
        }
      }
      bound.back().second.push_back(&group);
    }
  }
  if (!witnesses.empty()) return finish("engine_vs_oracle", std::move(witnesses));

  // Factorization precondition: across the bound subsets the tables must be
  // independent, or the product of subset LRs would not be the joint LR.
  {
    std::vector<std::vector<std::string>> subsets;
    for (const auto& [g, vars] : binding) {
      if (!vars.empty()) subsets.push_back(vars);
    }
    if (subsets.size() > 1) {
      std::vector<std::string> all_vars;
      for (const auto& s : subsets) all_vars.insert(all_vars.end(), s.begin(), s.end());
      for (const auto& [label, table] :
           {std::pair{"P", &world.mass_p}, std::pair{"D", &world.mass_d}}) {
        const double joint = observed_marginal(world, *table, all_vars);
        double product = 1.0;
        for (const auto& s : subsets) product *= observed_marginal(world, *table, s);
        if (!close_rel(joint, product, 1e-12)) {
          witnesses.push_back(std::string("table ") + label +
                              " is not independent across the bound subsets (joint " + fmt(joint) +
                              " vs product " + fmt(product) + ")");
        }
      }
      if (!witnesses.empty()) return finish("engine_vs_oracle", std::move(witnesses));
    }
  }

  for (const auto& [claim, groups] : bound) {
    // Expected posterior: prior odds times the oracle LR of every bound subset.
    KahanSum expected(std::log(claim->prior_odds));
    bool comparable = claim->prior_odds > 0.0 && !std::isinf(claim->prior_odds);
    for (const EvidenceGroup* group : groups) {
      const double oracle = oracle_lr(world, binding.at(group->id));
      if (oracle <= 0.0 || std::isinf(oracle) || group->lr <= 0.0 || std::isinf(group->lr)) {
        if (!(oracle == group->lr)) {
          witnesses.push_back("BINDING_MISMATCH: group '" + group->id + "' states lr " +
                              fmt(group->lr) + " but the oracle enumerates " + fmt(oracle));
        }
        comparable = false;
        continue;
      }
      expected.add(std::log(oracle));
      if (!close_rel(std::log(group->lr), std::log(oracle), 1e-9)) {
        witnesses.push_back("BINDING_MISMATCH: group '" + group->id + "' states lr " +
                            fmt(group->lr) + " but the oracle enumerates " + fmt(oracle));
      }
    }
    if (!comparable) continue;

    const LogOdds engine = claim_posterior_log_odds(*claim);
    if (!engine.is_finite() || std::abs(engine.log_value() - expected.value()) > 1e-12) {
      witnesses.push_back("claim '" + claim->id + "': engine posterior log-odds " +
                          (engine.is_finite() ? fmt(engine.log_value()) : "non-finite") +
                          " != oracle-composed " + fmt(expected.value()));
    }
  }
  return finish("engine_vs_oracle", std::move(witnesses));
}

}  // namespace plaus
