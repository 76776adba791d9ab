#pragma once

#include <filesystem>

#include "r2dpca/projector.hpp"

namespace r2dpca {

// Versioned binary model container. Scalars and arrays are stored as raw
// little-endian IEEE-754/integer bytes, so write/read round-trips
// bit-exactly (including p = infinity).
void save_model(const std::filesystem::path& path, const ProjectionModel& model);
ProjectionModel load_model(const std::filesystem::path& path);

} // namespace r2dpca
