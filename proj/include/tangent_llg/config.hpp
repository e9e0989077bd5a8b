#pragma once

#include "tangent_llg/sim_config.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace tangent_llg {

/// Result of parsing a config file. notes lists derived quantities when
/// physical (SI) inputs were given, e.g. "lex = 8.42 nm (from A, Ms)".
struct ParsedConfig {
  SimConfig config;
  std::vector<std::string> notes;
};

/// Flat "key = value" lines, '#' starts a comment. Unknown and duplicate
/// keys are errors. Throws ConfigError.
ParsedConfig parse_config_text(const std::string& text,
                               const std::string& source = "<config>");
ParsedConfig parse_config(const std::filesystem::path& path);

/// Writes cfg in the same format; parse_config_text(emit_config(c)) == c.
std::string emit_config(const SimConfig& cfg);

/// Builds (or loads) the mesh named by the config.
Mesh make_mesh(const MeshSource& source);

}  // namespace tangent_llg
