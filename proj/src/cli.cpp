#include "plaus/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "plaus/config.hpp"
#include "plaus/errors.hpp"
#include "plaus/parser.hpp"
#include "plaus/report.hpp"
#include "plaus/validate.hpp"
#include "plaus/world.hpp"

namespace plaus::cli {

namespace {

int code(ExitCode c) { return static_cast<int>(c); }

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

bool parse_double(const std::string& token, double& value) {
  if (token == "inf") {
    value = std::numeric_limits<double>::infinity();
    return true;
  }
  const char* begin = token.data();
  const char* end = begin + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  return ec == std::errc() && ptr == end;
}

std::optional<Config> load_runtime_config(std::ostream& err) {
  Config cfg = default_config();
  const char* path = std::getenv("PLAUS_CONFIG");
  if (!path || !*path) return cfg;
  auto text = read_file(path);
  if (!text) {
    err << "plaus: cannot read config file '" << path << "' (PLAUS_CONFIG)\n";
    return std::nullopt;
  }
  std::string error;
  auto loaded = parse_config(*text, cfg, error);
  if (!loaded) {
    err << "plaus: bad config '" << path << "': " << error << "\n";
    return std::nullopt;
  }
  return loaded;
}

std::optional<CaseSpec> load_case(const std::string& path, const Config& config,
                                  std::ostream& err) {
  auto text = read_file(path);
  if (!text) {
    err << "plaus: cannot read case file '" << path << "'\n";
    return std::nullopt;
  }
  ParseResult result = parse_case(*text, config.scale);
  if (!result.ok()) {
    for (const ParseDiagnostic& diag : result.diagnostics) {
      err << format_diagnostic(path, diag) << "\n";
    }
    return std::nullopt;
  }
  return std::move(result.spec);
}

std::optional<StandardOfProof> choose_standard(const CaseSpec& spec, const Config& config,
                                               const std::string& standard_flag,
                                               double threshold_flag, std::ostream& err) {
  if (threshold_flag > 0.0) return custom_standard(threshold_flag);
  if (!standard_flag.empty()) {
    auto it = config.thresholds.find(standard_flag);
    if (it == config.thresholds.end()) {
      err << "plaus: standard '" << standard_flag << "' has no configured threshold\n";
      return std::nullopt;
    }
    auto kind = standard_kind_from(standard_flag);
    return StandardOfProof{kind.value_or(StandardKind::custom), standard_flag, it->second};
  }
  if (spec.standard == StandardKind::custom) {
    err << "plaus: the case names a custom standard; pass --threshold <odds>\n";
    return std::nullopt;
  }
  auto resolved = resolve_standard(spec.standard, config);
  if (!resolved) {
    err << "plaus: standard '" << standard_kind_name(spec.standard)
        << "' has no configured threshold\n";
    return std::nullopt;
  }
  return resolved;
}

struct EvaluateArgs {
  std::string case_path;
  std::string format = "text";
  std::string standard;
  double threshold = 0.0;
};

struct CheckArgs {
  std::string case_path;
  int trials = 100;
  std::uint64_t seed = 0;
  std::string world_path;
  std::vector<std::string> bind;
  std::string format = "text";
};

struct SweepArgs {
  std::string case_path;
  std::string target;
  std::string values_csv;
  std::string range;
  std::string format = "text";
  std::string standard;
  double threshold = 0.0;
};

int run_evaluate(const EvaluateArgs& args, std::ostream& out, std::ostream& err) {
  auto config = load_runtime_config(err);
  if (!config) return code(ExitCode::invalid_input);
  auto spec = load_case(args.case_path, *config, err);
  if (!spec) return code(ExitCode::invalid_input);
  auto standard = choose_standard(*spec, *config, args.standard, args.threshold, err);
  if (!standard) return code(ExitCode::invalid_input);

  ContributionReport report = explain(*spec);
  if (args.format == "json") {
    out << evaluation_to_json(*spec, report, *standard).dump(2) << "\n";
  } else {
    evaluation_to_text(out, *spec, report, *standard);
  }

  for (const ClaimContribution& claim : report.claims) {
    if (apply_standard(claim.total, *standard) == Finding::not_met) {
      return code(ExitCode::standard_not_met);
    }
  }
  return code(ExitCode::success);
}

std::optional<GroupBinding> parse_bindings(const std::vector<std::string>& flags,
                                           std::ostream& err) {
  GroupBinding binding;
  for (const std::string& flag : flags) {
    const auto eq = flag.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 >= flag.size()) {
      err << "plaus: --bind expects group=V1,V2..., got '" << flag << "'\n";
      return std::nullopt;
    }
    std::vector<std::string> vars;
    std::string rest = flag.substr(eq + 1);
    std::size_t start = 0;
    while (start <= rest.size()) {
      auto comma = rest.find(',', start);
      std::string var = rest.substr(start, comma == std::string::npos ? std::string::npos
                                                                      : comma - start);
      if (!var.empty()) vars.push_back(std::move(var));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    binding[flag.substr(0, eq)] = std::move(vars);
  }
  return binding;
}

int run_check(const CheckArgs& args, std::ostream& out, std::ostream& err) {
  auto config = load_runtime_config(err);
  if (!config) return code(ExitCode::invalid_input);
  auto spec = load_case(args.case_path, *config, err);
  if (!spec) return code(ExitCode::invalid_input);

  CoherenceOptions options;
  options.trials = args.trials;
  options.seed = args.seed;
  std::vector<CheckResult> checks = check_case_coherence(*spec, options);

  if (!args.world_path.empty()) {
    auto text = read_file(args.world_path);
    if (!text) {
      err << "plaus: cannot read world file '" << args.world_path << "'\n";
      return code(ExitCode::invalid_input);
    }
    WorldParseResult world = parse_world(*text);
    if (!world.ok()) {
      for (const ParseDiagnostic& diag : world.diagnostics) {
        err << format_diagnostic(args.world_path, diag) << "\n";
      }
      return code(ExitCode::invalid_input);
    }

    // chain rule along the canonical ordering plus a few seeded shuffles
    std::vector<std::string> ordering;
    for (const WorldVariable& v : world.world->variables) {
      if (world.world->observed.count(v.id)) ordering.push_back(v.id);
    }
    std::mt19937_64 rng(args.seed);
    const int permutations = 1 + std::min(args.trials, 5);
    for (int i = 0; i < permutations; ++i) {
      CheckResult chain = check_chain_rule(*world.world, ordering);
      chain.name = "chain_rule[" + std::to_string(i) + "]";
      checks.push_back(std::move(chain));
      std::shuffle(ordering.begin(), ordering.end(), rng);
    }

    if (!args.bind.empty()) {
      auto binding = parse_bindings(args.bind, err);
      if (!binding) return code(ExitCode::invalid_input);
      checks.push_back(check_engine_vs_oracle(*world.world, *spec, *binding));
    }
  }

  if (args.format == "json") {
    out << checks_to_json(spec->case_id, checks).dump(2) << "\n";
  } else {
    checks_to_text(out, spec->case_id, checks);
  }
  const bool all = std::all_of(checks.begin(), checks.end(),
                               [](const CheckResult& c) { return c.passed; });
  return code(all ? ExitCode::success : ExitCode::standard_not_met);
}

std::optional<std::vector<double>> parse_values(const SweepArgs& args, std::ostream& err) {
  const bool have_values = !args.values_csv.empty();
  const bool have_range = !args.range.empty();
  if (have_values == have_range) {
    err << "plaus: sweep needs exactly one of --values or --range\n";
    return std::nullopt;
  }
  std::vector<double> values;
  if (have_values) {
    std::size_t start = 0;
    while (start <= args.values_csv.size()) {
      auto comma = args.values_csv.find(',', start);
      std::string token = args.values_csv.substr(
          start, comma == std::string::npos ? std::string::npos : comma - start);
      double v = 0.0;
      if (!parse_double(token, v)) {
        err << "plaus: bad value '" << token << "' in --values\n";
        return std::nullopt;
      }
      values.push_back(v);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return values;
  }
  // lo:hi:steps
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= args.range.size()) {
    auto colon = args.range.find(':', start);
    parts.push_back(args.range.substr(start, colon == std::string::npos ? std::string::npos
                                                                        : colon - start));
    if (colon == std::string::npos) break;
    start = colon + 1;
  }
  double lo = 0.0;
  double hi = 0.0;
  long steps = 0;
  if (parts.size() != 3 || !parse_double(parts[0], lo) || !parse_double(parts[1], hi) ||
      !(steps = std::strtol(parts[2].c_str(), nullptr, 10)) || steps < 1) {
    err << "plaus: --range expects lo:hi:steps with steps >= 1\n";
    return std::nullopt;
  }
  if (steps == 1) {
    values.push_back(lo);
  } else {
    for (long i = 0; i < steps; ++i) {
      values.push_back(lo + static_cast<double>(i) * (hi - lo) / static_cast<double>(steps - 1));
    }
  }
  return values;
}

int run_sweep(const SweepArgs& args, std::ostream& out, std::ostream& err) {
  auto config = load_runtime_config(err);
  if (!config) return code(ExitCode::invalid_input);
  auto spec = load_case(args.case_path, *config, err);
  if (!spec) return code(ExitCode::invalid_input);
  auto standard = choose_standard(*spec, *config, args.standard, args.threshold, err);
  if (!standard) return code(ExitCode::invalid_input);
  auto values = parse_values(args, err);
  if (!values) return code(ExitCode::invalid_input);

  SweepTable table = sweep(*spec, args.target, *values, *standard);
  if (args.format == "json") {
    out << sweep_to_json(*spec, table, *standard).dump(2) << "\n";
  } else {
    sweep_to_text(out, *spec, table, *standard);
  }
  return code(ExitCode::success);
}

int run_fmt(const std::string& case_path, std::ostream& out, std::ostream& err) {
  auto config = load_runtime_config(err);
  if (!config) return code(ExitCode::invalid_input);
  auto spec = load_case(case_path, *config, err);
  if (!spec) return code(ExitCode::invalid_input);
  out << serialize_case(*spec);
  return code(ExitCode::success);
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"posterior-odds evaluation of competing explanations of evidence"};
  app.name("plaus");
  app.require_subcommand(1);

  EvaluateArgs eval_args;
  CLI::App* eval = app.add_subcommand("evaluate", "evaluate a case and apply the standard of proof");
  eval->add_option("case", eval_args.case_path, "path to a .case file")->required();
  eval->add_option("--format", eval_args.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  eval->add_option("--standard", eval_args.standard, "standard-of-proof name from the config");
  eval->add_option("--threshold", eval_args.threshold, "explicit odds threshold (overrides names)");

  CheckArgs check_args;
  CLI::App* check = app.add_subcommand("check", "run coherence checks, optionally against a world");
  check->add_option("case", check_args.case_path, "path to a .case file")->required();
  check->add_option("--trials", check_args.trials, "random permutations to try")
      ->check(CLI::Range(0, 1000000));
  check->add_option("--seed", check_args.seed, "seed for the random probes");
  check->add_option("--world", check_args.world_path, "path to a .world file");
  check->add_option("--bind", check_args.bind, "group=V1,V2 bindings (repeatable)");
  check->add_option("--format", check_args.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  SweepArgs sweep_args;
  CLI::App* sw = app.add_subcommand("sweep", "re-evaluate while one parameter varies");
  sw->add_option("case", sweep_args.case_path, "path to a .case file")->required();
  sw->add_option("--target", sweep_args.target,
                 "<claim>.prior | <claim>.<group>.lr | <claim>.<group>.coverage | "
                 "<claim>.(for|against).complexity")
      ->required();
  sw->add_option("--values", sweep_args.values_csv, "comma-separated values");
  sw->add_option("--range", sweep_args.range, "lo:hi:steps");
  sw->add_option("--format", sweep_args.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  sw->add_option("--standard", sweep_args.standard, "standard-of-proof name from the config");
  sw->add_option("--threshold", sweep_args.threshold, "explicit odds threshold");

  std::string fmt_path;
  CLI::App* fmt = app.add_subcommand("fmt", "reprint a case in canonical form");
  fmt->add_option("case", fmt_path, "path to a .case file")->required();

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return code(ExitCode::success);
  } catch (const CLI::ParseError& e) {
    err << "plaus: " << e.what() << "\n";
    err << app.help();
    return code(ExitCode::invalid_input);
  }

  try {
    if (eval->parsed()) return run_evaluate(eval_args, out, err);
    if (check->parsed()) return run_check(check_args, out, err);
    if (sw->parsed()) return run_sweep(sweep_args, out, err);
    if (fmt->parsed()) return run_fmt(fmt_path, out, err);
    err << app.help();
    return code(ExitCode::invalid_input);
  } catch (const EvalError& e) {
    err << "plaus: " << e.what() << "\n";
    return code(ExitCode::invalid_input);
  } catch (const std::exception& e) {
    err << "plaus: internal error: " << e.what() << "\n";
    return code(ExitCode::internal_error);
  }
}

}  // namespace plaus::cli
