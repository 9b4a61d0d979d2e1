#pragma once

#include "harmspace/features.hpp"

#include <filesystem>

namespace harmspace {

// Feature store CSV: metadata columns first (bearing_id, class, speed_rpm,
// load_nm, run, segment), then one column per feature labeled by harmonic or
// by Hz. Values round-trip exactly (shortest round-trip decimal form).
void write_feature_store(const FeatureMatrix& features, const std::filesystem::path& path);
FeatureMatrix read_feature_store(const std::filesystem::path& path);

} // namespace harmspace
