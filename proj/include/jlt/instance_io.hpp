#pragma once

// Instance files: a JSON object with keys "a_offset", "a", "b_offset", "b".
// Missing keys mean empty windows.

#include <filesystem>
#include <string>
#include <string_view>

#include "jlt/core.hpp"

namespace jlt {

/// Throws ValidationError on malformed text or unexpected value types.
Perturbation parse_instance(std::string_view text);
Perturbation read_instance_file(const std::filesystem::path& path);

/// Canonical single-line serialization; parse_instance(serialize_instance(p)) == p.
std::string serialize_instance(const Perturbation& p);

}  // namespace jlt
