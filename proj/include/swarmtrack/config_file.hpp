#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "swarmtrack/config.hpp"
#include "swarmtrack/scenario.hpp"

namespace swarmtrack {

/// Parses `key = value` tracker configuration text. Blank lines and
/// `#` comments are ignored, missing keys keep their defaults. Unknown keys
/// and malformed values throw ParseError; the result is validated and
/// violations throw ConfigError.
TrackerConfig parse_config_text(std::istream& in, const std::string& source = "<stream>");
TrackerConfig parse_config(const std::filesystem::path& path);

/// Writes every key with its current value, in parse_config_text syntax.
void write_config(std::ostream& out, const TrackerConfig& cfg);

/// Scenario description in the same syntax. Per-target keys are
/// `waypoint.<id> = frame,u,v` (repeatable) and `size.<id> = w,h`;
/// `occlusion = target,first,last` is repeatable.
ScenarioSpec parse_scenario_text(std::istream& in, const std::string& source = "<stream>");
ScenarioSpec parse_scenario(const std::filesystem::path& path);

void write_scenario(std::ostream& out, const ScenarioSpec& spec);

}  // namespace swarmtrack
