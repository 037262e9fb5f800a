#include "plaus/config.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

namespace plaus {

ScaleTable default_scale() {
  // Symmetric decade-style verbal scale; values below 1 favour the opposing
  // hypothesis. Editable via the `scale` config key.
  return ScaleTable{{
      {"decisive_against", 0.001},
      {"strong_against", 0.01},
      {"moderate_against", 0.1},
      {"weak_against", 0.5},
      {"neutral", 1.0},
      {"weak_support", 2.0},
      {"moderate_support", 10.0},
      {"strong_support", 100.0},
      {"decisive_support", 1000.0},
  }};
}

std::optional<double> qualitative_to_lr(std::string_view label, const ScaleTable& scale) {
  auto it = scale.labels.find(std::string(label));
  if (it == scale.labels.end()) return std::nullopt;
  return it->second;
}

Config default_config() {
  Config cfg;
  cfg.thresholds = {
      {"preponderance", 1.0},
      {"clear_and_convincing", 3.0},
      {"beyond_reasonable_doubt", 99.0},
  };
  cfg.scale = default_scale();
  return cfg;
}

namespace {

std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) out.emplace_back(line.substr(start, i - start));
  }
  return out;
}

bool parse_number(const std::string& tok, double& value) {
  if (tok == "inf") {
    value = std::numeric_limits<double>::infinity();
    return true;
  }
  const char* begin = tok.data();
  const char* end = begin + tok.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  return ec == std::errc() && ptr == end && !std::isnan(value);
}

}  // namespace

std::optional<Config> parse_config(std::string_view text, const Config& base, std::string& error) {
  Config cfg = base;
  int lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++lineno;

    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto tokens = split_ws(line);
    if (tokens.empty()) continue;

    auto fail = [&](const std::string& why) {
      std::ostringstream os;
      os << "line " << lineno << ": " << why;
      error = os.str();
    };

    if (tokens[0] == "threshold") {
      if (tokens.size() != 3) {
        fail("expected: threshold <name> <odds>");
        return std::nullopt;
      }
      double odds = 0.0;
      if (!parse_number(tokens[2], odds) || !(odds > 0.0) || std::isinf(odds)) {
        fail("threshold odds must be a positive finite number");
        return std::nullopt;
      }
      cfg.thresholds[tokens[1]] = odds;
    } else if (tokens[0] == "scale") {
      if (tokens.size() != 3) {
        fail("expected: scale <label> <lr>");
        return std::nullopt;
      }
      double lr = 0.0;
      if (!parse_number(tokens[2], lr) || !(lr > 0.0) || std::isinf(lr)) {
        fail("scale ratio must be a positive finite number");
        return std::nullopt;
      }
      cfg.scale.labels[tokens[1]] = lr;
    } else {
      fail("unknown config key '" + tokens[0] + "' (expected threshold or scale)");
      return std::nullopt;
    }
  }
  return cfg;
}

std::optional<StandardOfProof> resolve_standard(StandardKind kind, const Config& config) {
  if (kind == StandardKind::custom) return std::nullopt;
  const std::string name(standard_kind_name(kind));
  auto it = config.thresholds.find(name);
  if (it == config.thresholds.end()) return std::nullopt;
  return StandardOfProof{kind, name, it->second};
}

StandardOfProof custom_standard(double threshold_odds) {
  return StandardOfProof{StandardKind::custom, "custom", threshold_odds};
}

}  // namespace plaus
