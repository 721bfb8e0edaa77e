#pragma once

// JSON form of a configuration:
//   {"field": "R"|"C", "d": .., "K": .., "N": ..,
//    "blocks": [[e_00, e_01, ...], ...]}
// Each block lists its d*K entries row-major. Complex entries are [re, im];
// real entries are plain numbers ([re] is also accepted on input). Doubles are
// written in shortest round-trip form, so reading back is bit-exact.

#include <filesystem>
#include <string>
#include <string_view>

#include "grasspack/geometry.hpp"

namespace grasspack {

std::string configuration_to_json(const Configuration& config);

/// Throws ParseError naming the offending line or field.
Configuration configuration_from_json(std::string_view text);

void write_configuration(const std::filesystem::path& path, const Configuration& config);
Configuration read_configuration(const std::filesystem::path& path);

}  // namespace grasspack
