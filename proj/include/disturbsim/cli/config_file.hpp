#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "disturbsim/core/config.hpp"

namespace disturbsim::cli {

/// Every accepted key in `section.name` form; top-level keys have no section.
std::vector<std::string> config_keys();

/// Sets one key. `key` may be fully qualified or a bare name that is unique across
/// sections. Throws ConfigError for unknown keys and malformed values.
void apply_setting(SimConfig& cfg, std::string_view key, std::string_view value);

/// Applies a `key=value` override as given on the command line.
void apply_override(SimConfig& cfg, std::string_view assignment);

/// Line-oriented `key = value` text with optional `[section]` headers and `#`
/// comments, applied on top of `base`. Throws ParseError carrying the line.
SimConfig parse_config(std::istream& in, SimConfig base = {});
SimConfig parse_config(std::string_view text, SimConfig base = {});
SimConfig load_config(const std::filesystem::path& path, SimConfig base = {});

/// Canonical text for `cfg` that parse_config reads back to the same values.
std::string format_config(const SimConfig& cfg);

}  // namespace disturbsim::cli
