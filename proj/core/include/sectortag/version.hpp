#pragma once

namespace sectortag {

inline constexpr const char* kVersion = "0.1.0";

// On-disk format versions; bumped on any schema change.
inline constexpr int kFeatureSpaceFormat = 1;
inline constexpr int kModelFormat = 1;
inline constexpr int kSelectedFeaturesFormat = 1;
inline constexpr int kManifestFormat = 1;

} // namespace sectortag
