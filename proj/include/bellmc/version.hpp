#pragma once

namespace bellmc {

inline constexpr const char* kVersion = "0.1.0";

// All interfaces use picoseconds for time and micrometers for length.
inline constexpr double kSpeedOfLightUmPerPs = 299.792458;

}  // namespace bellmc
