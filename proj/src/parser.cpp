#include "plaus/parser.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "lexer.hpp"
#include "plaus/validate.hpp"

namespace plaus {

namespace {

using detail::LexResult;
using detail::Token;
using detail::TokenKind;

struct ParseBail {};

// Spans of the declarations a later validation pass may point back at.
struct SpanTable {
  SourceSpan case_span;
  std::map<std::string, std::vector<SourceSpan>> decl;      // any declared id
  std::map<std::string, SourceSpan> coverage_clause;        // group id -> coverage number
  std::map<std::string, SourceSpan> lr_clause;              // group id -> lr value
  std::map<std::string, SourceSpan> complexity_clause;      // hypothesis id -> number
  std::map<std::string, SourceSpan> prior_clause;           // claim id -> number
  std::map<std::string, std::vector<SourceSpan>> given_ref; // referenced assumption id
  std::map<std::string, SourceSpan> statement;              // hypothesis id -> statement string

  void declare(const std::string& id, SourceSpan span) { decl[id].push_back(span); }
};

class CaseParser {
 public:
  CaseParser(std::string_view source, const ScaleTable& scale) : scale_(scale) {
    lexed_ = detail::lex(source);
  }

  ParseResult run() {
    ParseResult result;
    if (!lexed_.ok()) {
      result.diagnostics = lexed_.diagnostics;
      return result;
    }
    CaseSpec spec;
    try {
      spec = parse_case_body();
    } catch (const ParseBail&) {
      result.diagnostics = std::move(diagnostics_);
      return result;
    }

    ValidationReport report = validate_case(spec);
    if (!report.ok()) {
      for (const Violation& v : report.violations) {
        result.diagnostics.push_back(ParseDiagnostic{
            Severity::error, std::string(violation_code_name(v.code)), v.message,
            span_for(v, spec)});
      }
      return result;
    }
    result.spec = std::move(spec);
    return result;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    const std::size_t i = std::min(pos_ + ahead, lexed_.tokens.size() - 1);
    return lexed_.tokens[i];
  }
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
    throw ParseBail{};
  }

  std::string describe(const Token& t) const {
    switch (t.kind) {
      case TokenKind::ident: return "'" + t.text + "'";
      case TokenKind::string: return "string literal";
      case TokenKind::number: return "number " + t.text;
      case TokenKind::lbrace: return "'{'";
      case TokenKind::rbrace: return "'}'";
      case TokenKind::end: return "end of input";
    }
    return "token";
  }

  void expect_keyword(std::string_view word) {
    if (!at_ident(word)) {
      fail("EXPECTED_KEYWORD", "expected '" + std::string(word) + "', found " + describe(peek()),
           peek().span);
    }
    take();
  }

  std::pair<std::string, SourceSpan> expect_ident(std::string_view what) {
    if (peek().kind != TokenKind::ident) {
      fail("EXPECTED_IDENT",
           "expected " + std::string(what) + ", found " + describe(peek()), peek().span);
    }
    const Token& t = take();
    return {t.text, t.span};
  }

  std::pair<std::string, SourceSpan> expect_string(std::string_view what) {
    if (peek().kind != TokenKind::string) {
      fail("EXPECTED_STRING",
           "expected " + std::string(what) + " string, found " + describe(peek()), peek().span);
    }
    const Token& t = take();
    return {t.text, t.span};
  }

  std::pair<double, SourceSpan> expect_number(std::string_view what) {
    if (peek().kind == TokenKind::number) {
      const Token& t = take();
      return {t.number, t.span};
    }
    if (at_ident("inf")) {
      const Token& t = take();
      return {std::numeric_limits<double>::infinity(), t.span};
    }
    fail("EXPECTED_NUMBER",
         "expected " + std::string(what) + " number, found " + describe(peek()), peek().span);
  }

  void expect_brace(TokenKind kind) {
    if (peek().kind != kind) {
      fail(kind == TokenKind::lbrace ? "EXPECTED_LBRACE" : "EXPECTED_RBRACE",
           std::string("expected '") + (kind == TokenKind::lbrace ? '{' : '}') + "', found " +
               describe(peek()),
           peek().span);
    }
    take();
  }

  CaseSpec parse_case_body() {
    CaseSpec spec;
    if (!at_ident("case")) {
      fail("EXPECTED_KEYWORD", "a case file starts with 'case \"<id>\"', found " + describe(peek()),
           peek().span);
    }
    spans_.case_span = peek().span;
    take();
    spec.case_id = expect_string("case id").first;

    // headers
    for (;;) {
      if (at_ident("question")) {
        take();
        spec.question = expect_string("question").first;
      } else if (at_ident("standard")) {
        take();
        auto [name, span] = expect_ident("standard name");
        auto kind = standard_kind_from(name);
        if (!kind) {
          fail("UNKNOWN_STANDARD",
               "unknown standard '" + name +
                   "' (expected preponderance, clear_and_convincing, beyond_reasonable_doubt or custom)",
               span);
        }
        spec.standard = *kind;
      } else if (at_ident("assume")) {
        take();
        BackgroundAssumption bg;
        auto [id, span] = expect_ident("assumption id");
        bg.id = id;
        spans_.declare(id, span);
        bg.text = expect_string("assumption").first;
        if (at_ident("stipulated")) {
          take();
          bg.kind = AssumptionKind::stipulation;
        }
        spec.background.push_back(std::move(bg));
      } else {
        break;
      }
    }

    if (!at_ident("claim")) {
      fail("EXPECTED_KEYWORD", "expected at least one 'claim' block, found " + describe(peek()),
           peek().span);
    }
    while (at_ident("claim")) {
      spec.claims.push_back(parse_claim());
    }
    if (peek().kind != TokenKind::end) {
      fail("UNKNOWN_KEYWORD", "unexpected " + describe(peek()) + " after the last claim",
           peek().span);
    }
    return spec;
  }

  Claim parse_claim() {
    expect_keyword("claim");
    Claim claim;
    auto [id, id_span] = expect_ident("claim id");
    claim.id = id;
    spans_.declare(id, id_span);
    expect_brace(TokenKind::lbrace);

    bool have_claimant = false;
    bool have_opposing = false;
    for (int side = 0; side < 2; ++side) {
      if (at_ident("for")) {
        if (have_claimant) fail("DUPLICATE_SIDE", "claim '" + id + "' states 'for' twice", peek().span);
        take();
        claim.claimant = parse_hypothesis();
        have_claimant = true;
      } else if (at_ident("against")) {
        if (have_opposing) fail("DUPLICATE_SIDE", "claim '" + id + "' states 'against' twice", peek().span);
        take();
        claim.opposing = parse_hypothesis();
        have_opposing = true;
      } else {
        fail("EXPECTED_KEYWORD",
             "claim '" + id + "' needs a 'for' and an 'against' hypothesis, found " + describe(peek()),
             peek().span);
      }
    }

    if (at_ident("prior_odds")) {
      take();
      auto [value, span] = expect_number("prior odds");
      claim.prior_odds = value;
      spans_.prior_clause[claim.id] = span;
    }

    while (at_ident("group")) {
      claim.groups.push_back(parse_group());
    }
    if (peek().kind != TokenKind::rbrace) {
      fail("UNKNOWN_KEYWORD",
           "unexpected " + describe(peek()) + " in claim '" + id +
               "' (expected 'group' or '}'; note the order is for/against, prior_odds, groups)",
           peek().span);
    }
    take();
    return claim;
  }

  Hypothesis parse_hypothesis() {
    Hypothesis hyp;
    auto [id, id_span] = expect_ident("hypothesis id");
    hyp.id = id;
    spans_.declare(id, id_span);
    auto [stmt, stmt_span] = expect_string("hypothesis statement");
    hyp.statement = stmt;
    spans_.statement[id] = stmt_span;
    if (at_ident("complexity")) {
      take();
      auto [value, span] = expect_number("complexity");
      hyp.complexity = value;
      spans_.complexity_clause[id] = span;
    }
    return hyp;
  }

  EvidenceGroup parse_group() {
    expect_keyword("group");
    EvidenceGroup group;
    auto [id, id_span] = expect_ident("group id");
    group.id = id;
    spans_.declare(id, id_span);
    if (at_ident("coverage")) {
      take();
      auto [value, span] = expect_number("coverage");
      group.coverage = value;
      spans_.coverage_clause[id] = span;
    }
    expect_brace(TokenKind::lbrace);

    if (!at_ident("evidence")) {
      fail("EXPECTED_KEYWORD",
           "group '" + id + "' must list at least one 'evidence' item before its lr, found " +
               describe(peek()),
           peek().span);
    }
    while (at_ident("evidence")) {
      take();
      EvidenceItem item;
      auto [iid, ispan] = expect_ident("evidence id");
      item.id = iid;
      spans_.declare(iid, ispan);
      item.description = expect_string("evidence description").first;
      if (at_ident("kind")) {
        take();
        auto [kname, kspan] = expect_ident("evidence kind");
        auto kind = evidence_kind_from(kname);
        if (!kind) {
          fail("UNKNOWN_KIND",
               "unknown evidence kind '" + kname +
                   "' (expected testimony, physical, documentary or other)",
               kspan);
        }
        item.kind = *kind;
      }
      group.items.push_back(std::move(item));
    }

    if (!at_ident("lr")) {
      fail("EXPECTED_KEYWORD", "group '" + id + "' needs an 'lr' clause, found " + describe(peek()),
           peek().span);
    }
    take();
    if (at_ident("label")) {
      take();
      auto [label, lspan] = expect_string("scale label");
      auto lr = qualitative_to_lr(label, scale_);
      if (!lr) {
        fail("UNKNOWN_LABEL", "label '" + label + "' is not in the verbal scale", lspan);
      }
      group.lr = *lr;
      spans_.lr_clause[id] = lspan;
    } else {
      auto [value, span] = expect_number("likelihood ratio");
      group.lr = value;
      spans_.lr_clause[id] = span;
    }

    if (at_ident("because")) {
      take();
      group.rationale = expect_string("rationale").first;
    }
    if (at_ident("given")) {
      take();
      if (peek().kind != TokenKind::ident) {
        fail("EXPECTED_IDENT", "'given' needs at least one background assumption id", peek().span);
      }
      while (peek().kind == TokenKind::ident) {
        const Token& t = take();
        group.conditions_on.push_back(t.text);
        spans_.given_ref[t.text].push_back(t.span);
      }
    }
    expect_brace(TokenKind::rbrace);
    return group;
  }

  // Best source span for a validation violation; falls back to the case keyword.
  SourceSpan span_for(const Violation& v, const CaseSpec& spec) const {
    auto first = [&](const std::map<std::string, std::vector<SourceSpan>>& m,
                     const std::string& key, std::size_t index) -> const SourceSpan* {
      auto it = m.find(key);
      if (it == m.end() || it->second.empty()) return nullptr;
      return &it->second[std::min(index, it->second.size() - 1)];
    };
    auto clause = [&](const std::map<std::string, SourceSpan>& m,
                      const std::string& key) -> const SourceSpan* {
      auto it = m.find(key);
      return it == m.end() ? nullptr : &it->second;
    };

    const SourceSpan* span = nullptr;
    switch (v.code) {
      case ViolationCode::COVERAGE_OUT_OF_RANGE:
      case ViolationCode::NONFINITE_WITH_COVERAGE:
        span = clause(spans_.coverage_clause, v.subject);
        if (!span) span = clause(spans_.lr_clause, v.subject);
        break;
      case ViolationCode::NEGATIVE_LR:
        span = clause(spans_.lr_clause, v.subject);
        break;
      case ViolationCode::COMPLEXITY_LT_ONE:
        span = clause(spans_.complexity_clause, v.subject);
        break;
      case ViolationCode::INVALID_PRIOR:
        span = clause(spans_.prior_clause, v.subject);
        break;
      case ViolationCode::DUPLICATE_ITEM:
      case ViolationCode::ITEM_IN_TWO_GROUPS:
      case ViolationCode::DUPLICATE_CLAIM:
      case ViolationCode::DUPLICATE_GROUP:
      case ViolationCode::DUPLICATE_ASSUMPTION:
        span = first(spans_.decl, v.subject, 1);  // the re-declaration
        break;
      case ViolationCode::UNKNOWN_ASSUMPTION:
        span = first(spans_.given_ref, v.subject, 0);
        break;
      case ViolationCode::EMPTY_CLAIM: {
        // empty statement reads best at the statement itself
        for (const Claim& c : spec.claims) {
          if (c.id != v.subject) continue;
          for (const Hypothesis* h : {&c.claimant, &c.opposing}) {
            if (h->statement.empty()) {
              span = clause(spans_.statement, h->id);
              break;
            }
          }
        }
        if (!span) span = first(spans_.decl, v.subject, 0);
        break;
      }
      default:
        span = first(spans_.decl, v.subject, 0);
        break;
    }
    return span ? *span : spans_.case_span;
  }

  LexResult lexed_;
  std::size_t pos_ = 0;
  const ScaleTable& scale_;
  SpanTable spans_;
  std::vector<ParseDiagnostic> diagnostics_;
};

void write_number(std::string& out, double value) {
  if (std::isinf(value)) {
    out += "inf";
    return;
  }
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  out.append(buf, ptr);
}

void write_string(std::string& out, std::string_view text) {
  out += '"';
  for (char c : text) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c; break;
    }
  }
  out += '"';
}

}  // namespace

ParseResult parse_case(std::string_view source) { return parse_case(source, default_scale()); }

ParseResult parse_case(std::string_view source, const ScaleTable& scale) {
  return CaseParser(source, scale).run();
}

std::string serialize_case(const CaseSpec& spec) {
  std::string out;
  out += "case ";
  write_string(out, spec.case_id);
  out += '\n';
  if (!spec.question.empty()) {
    out += "question ";
    write_string(out, spec.question);
    out += '\n';
  }
  if (spec.standard != StandardKind::preponderance) {
    out += "standard ";
    out += standard_kind_name(spec.standard);
    out += '\n';
  }
  for (const BackgroundAssumption& bg : spec.background) {
    out += "assume " + bg.id + " ";
    write_string(out, bg.text);
    if (bg.kind == AssumptionKind::stipulation) out += " stipulated";
    out += '\n';
  }

  for (const Claim& claim : spec.claims) {
    out += "\nclaim " + claim.id + " {\n";
    for (const auto& [keyword, hyp] :
         {std::pair{"for", &claim.claimant}, std::pair{"against", &claim.opposing}}) {
      out += "  ";
      out += keyword;
      out += ' ' + hyp->id + ' ';
      write_string(out, hyp->statement);
      if (hyp->complexity != 1.0) {
        out += " complexity ";
        write_number(out, hyp->complexity);
      }
      out += '\n';
    }
    if (claim.prior_odds != 1.0) {
      out += "  prior_odds ";
      write_number(out, claim.prior_odds);
      out += '\n';
    }
    for (const EvidenceGroup& group : claim.groups) {
      out += "  group " + group.id;
      if (group.coverage != 1.0) {
        out += " coverage ";
        write_number(out, group.coverage);
      }
      out += " {\n";
      for (const EvidenceItem& item : group.items) {
        out += "    evidence " + item.id + ' ';
        write_string(out, item.description);
        if (item.kind != EvidenceKind::other) {
          out += " kind ";
          out += evidence_kind_name(item.kind);
        }
        out += '\n';
      }
      out += "    lr ";
      write_number(out, group.lr);
      out += '\n';
      if (!group.rationale.empty()) {
        out += "    because ";
        write_string(out, group.rationale);
        out += '\n';
      }
      if (!group.conditions_on.empty()) {
        out += "    given";
        for (const std::string& ref : group.conditions_on) out += ' ' + ref;
        out += '\n';
      }
      out += "  }\n";
    }
    out += "}\n";
  }
  return out;
}

std::string format_diagnostic(std::string_view filename, const ParseDiagnostic& diag) {
  std::ostringstream os;
  os << filename << ':' << diag.span.line << ':' << diag.span.column << ": "
     << (diag.severity == Severity::error ? "error" : "warning") << '[' << diag.code
     << "]: " << diag.message;
  return os.str();
}

}  // namespace plaus
