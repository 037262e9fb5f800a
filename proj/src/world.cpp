#include "plaus/world.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "lexer.hpp"
#include "plaus/kahan.hpp"

namespace plaus {

std::size_t DiscreteWorld::combo_count() const {
  std::size_t n = 1;
  for (const WorldVariable& v : variables) {
    if (v.outcomes.empty()) return 0;
    n *= v.outcomes.size();
    if (n > kMaxCombos) return kMaxCombos + 1;  // saturated; callers only compare against the cap
  }
  return n;
}

std::optional<std::size_t> DiscreteWorld::variable_index(std::string_view id) const {
  for (std::size_t i = 0; i < variables.size(); ++i) {
    if (variables[i].id == id) return i;
  }
  return std::nullopt;
}

std::size_t DiscreteWorld::stride(std::size_t var_index) const {
  std::size_t s = 1;
  for (std::size_t i = var_index + 1; i < variables.size(); ++i) {
    s *= variables[i].outcomes.size();
  }
  return s;
}

std::size_t DiscreteWorld::outcome_index(std::size_t var_index, std::string_view outcome) const {
  const auto& outcomes = variables[var_index].outcomes;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (outcomes[i] == outcome) return i;
  }
  return outcomes.size();  // callers validate first
}

std::vector<std::string> validate_world(const DiscreteWorld& world) {
  std::vector<std::string> problems;
  if (world.variables.empty()) problems.push_back("world declares no variables");

  std::set<std::string> var_ids;
  for (const WorldVariable& v : world.variables) {
    if (!var_ids.insert(v.id).second) problems.push_back("variable '" + v.id + "' declared twice");
    if (v.outcomes.empty()) problems.push_back("variable '" + v.id + "' has no outcomes");
    std::set<std::string> seen(v.outcomes.begin(), v.outcomes.end());
    if (seen.size() != v.outcomes.size()) {
      problems.push_back("variable '" + v.id + "' repeats an outcome");
    }
  }

  const std::size_t combos = world.combo_count();
  if (combos > DiscreteWorld::kMaxCombos) {
    problems.push_back("world exceeds the enumeration cap of 2^20 outcome combinations");
    return problems;  // tables are not even the right size to inspect
  }
  if (world.mass_p.size() != combos || world.mass_d.size() != combos) {
    problems.push_back("mass tables do not cover every outcome combination");
    return problems;
  }

  for (const auto& [label, table] : {std::pair{"P", &world.mass_p}, std::pair{"D", &world.mass_d}}) {
    KahanSum sum;
    for (double m : *table) {
      if (std::isnan(m) || m < 0.0) {
        problems.push_back(std::string("table ") + label + " contains a negative or NaN mass");
        break;
      }
      sum.add(m);
    }
    if (std::abs(sum.value() - 1.0) > 1e-12) {
      problems.push_back(std::string("table ") + label + " masses sum to " +
                         std::to_string(sum.value()) + ", not 1");
    }
  }

  for (const auto& [var, outcome] : world.observed) {
    auto idx = world.variable_index(var);
    if (!idx) {
      problems.push_back("observed variable '" + var + "' is not declared");
      continue;
    }
    if (world.outcome_index(*idx, outcome) >= world.variables[*idx].outcomes.size()) {
      problems.push_back("observed outcome '" + outcome + "' is not an outcome of '" + var + "'");
    }
  }
  return problems;
}

namespace {

using detail::Token;
using detail::TokenKind;

struct WorldBail {};

class WorldParser {
 public:
  explicit WorldParser(std::string_view source) { lexed_ = detail::lex(source); }

  WorldParseResult run() {
    WorldParseResult result;
    if (!lexed_.ok()) {
      result.diagnostics = lexed_.diagnostics;
      return result;
    }
    DiscreteWorld world;
    try {
      world = parse();
    } catch (const WorldBail&) {
      result.diagnostics = std::move(diagnostics_);
      return result;
    }
    for (const std::string& problem : validate_world(world)) {
      result.diagnostics.push_back(
          ParseDiagnostic{Severity::error, "INVALID_WORLD", problem, world_span_});
    }
    if (!result.diagnostics.empty()) return result;
    result.world = std::move(world);
    return result;
  }

 private:
  const Token& peek() const { return lexed_.tokens[std::min(pos_, lexed_.tokens.size() - 1)]; }
  const Token& take() {
    const Token& t = peek();
    if (pos_ + 1 < lexed_.tokens.size()) ++pos_;
    return t;
  }
  bool at_ident(std::string_view word) const {
    return peek().kind == TokenKind::ident && peek().text == word;
  }

  [[noreturn]] void fail(std::string code, std::string message, SourceSpan span) {
    diagnostics_.push_back(
        ParseDiagnostic{Severity::error, std::move(code), std::move(message), span});
    throw WorldBail{};
  }

  std::string expect_ident(std::string_view what) {
    if (peek().kind != TokenKind::ident) {
      fail("EXPECTED_IDENT", "expected " + std::string(what), peek().span);
    }
    return take().text;
  }

  DiscreteWorld parse() {
    DiscreteWorld world;
    if (!at_ident("world")) {
      fail("EXPECTED_KEYWORD", "a world file starts with 'world \"<id>\"'", peek().span);
    }
    world_span_ = peek().span;
    take();
    if (peek().kind != TokenKind::string) {
      fail("EXPECTED_STRING", "expected world id string", peek().span);
    }
    world.world_id = take().text;

    // variable declarations come first so mass rows know their shape
    while (at_ident("var")) {
      take();
      WorldVariable var;
      var.id = expect_ident("variable id");
      if (peek().kind != TokenKind::lbrace) {
        fail("EXPECTED_LBRACE", "expected '{' with the outcomes of '" + var.id + "'", peek().span);
      }
      take();
      while (peek().kind == TokenKind::ident) {
        var.outcomes.push_back(take().text);
      }
      if (peek().kind != TokenKind::rbrace) {
        fail("EXPECTED_RBRACE", "expected '}' after the outcomes of '" + var.id + "'", peek().span);
      }
      take();
      if (var.outcomes.empty()) {
        fail("INVALID_WORLD", "variable '" + var.id + "' has no outcomes", world_span_);
      }
      world.variables.push_back(std::move(var));
    }

    const std::size_t combos = world.combo_count();
    if (combos == 0 || combos > DiscreteWorld::kMaxCombos) {
      fail("INVALID_WORLD",
           "world must have between 1 and 2^20 outcome combinations", world_span_);
    }
    world.mass_p.assign(combos, 0.0);
    world.mass_d.assign(combos, 0.0);
    std::set<std::pair<char, std::size_t>> filled;

    while (peek().kind == TokenKind::ident) {
      if (at_ident("observe")) {
        take();
        const Token& var_tok = peek();
        std::string var = expect_ident("observed variable id");
        auto idx = world.variable_index(var);
        if (!idx) fail("UNKNOWN_VARIABLE", "variable '" + var + "' is not declared", var_tok.span);
        const Token& out_tok = peek();
        std::string outcome = expect_ident("observed outcome");
        if (world.outcome_index(*idx, outcome) >= world.variables[*idx].outcomes.size()) {
          fail("UNKNOWN_OUTCOME", "'" + outcome + "' is not an outcome of '" + var + "'",
               out_tok.span);
        }
        world.observed[var] = outcome;
        continue;
      }
      if (at_ident("mass")) {
        take();
        const Token& hyp_tok = peek();
        std::string hyp = expect_ident("hypothesis (P or D)");
        if (hyp != "P" && hyp != "D") {
          fail("UNKNOWN_HYPOTHESIS", "mass rows belong to table P or D, found '" + hyp + "'",
               hyp_tok.span);
        }
        std::size_t index = 0;
        for (std::size_t v = 0; v < world.variables.size(); ++v) {
          const Token& out_tok = peek();
          std::string outcome = expect_ident("outcome for variable '" + world.variables[v].id + "'");
          std::size_t oi = world.outcome_index(v, outcome);
          if (oi >= world.variables[v].outcomes.size()) {
            fail("UNKNOWN_OUTCOME",
                 "'" + outcome + "' is not an outcome of '" + world.variables[v].id + "'",
                 out_tok.span);
          }
          index += oi * world.stride(v);
        }
        const Token& mass_tok = peek();
        if (mass_tok.kind != TokenKind::number) {
          fail("EXPECTED_NUMBER", "expected the probability mass of the row", mass_tok.span);
        }
        take();
        if (!filled.insert({hyp[0], index}).second) {
          fail("DUPLICATE_MASS_ROW", "this outcome combination already has a mass in table " + hyp,
               mass_tok.span);
        }
        (hyp == "P" ? world.mass_p : world.mass_d)[index] = mass_tok.number;
        continue;
      }
      fail("UNKNOWN_KEYWORD", "expected 'var', 'observe' or 'mass', found '" + peek().text + "'",
           peek().span);
    }
    if (peek().kind != TokenKind::end) {
      fail("UNKNOWN_KEYWORD", "unexpected token after the mass rows", peek().span);
    }
    return world;
  }

  detail::LexResult lexed_;
  std::size_t pos_ = 0;
  SourceSpan world_span_;
  std::vector<ParseDiagnostic> diagnostics_;
};

}  // namespace

WorldParseResult parse_world(std::string_view source) { return WorldParser(source).run(); }

}  // namespace plaus
