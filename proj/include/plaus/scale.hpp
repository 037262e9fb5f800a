#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace plaus {

// Verbal strength labels -> likelihood ratios, so case files can say
// `lr label "moderate_support"` instead of a bare number. The table is plain
// configuration; nothing canonical is claimed for the shipped values.
struct ScaleTable {
  std::map<std::string, double> labels;  // label -> positive finite ratio
};

// The table compiled into the binary; config/plaus.conf ships the same values.
ScaleTable default_scale();

// UNKNOWN_LABEL is signalled by an empty optional; callers own the diagnostic.
std::optional<double> qualitative_to_lr(std::string_view label, const ScaleTable& scale);

}  // namespace plaus
