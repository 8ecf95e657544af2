#pragma once

#include <numbers>

namespace gcm::units {

inline constexpr double speed_of_light = 299792458.0;  // m/s
inline constexpr double length_unit_m = 0.1;           // 1 dimensionless unit = 10 cm
inline constexpr const char* unit_tag = "dimensionless-0.1m";

/// Dimensionless wavenumber k = 2 pi nu L / c for a frequency in GHz.
inline double ghz_to_wavenumber(double ghz) {
    return 2.0 * std::numbers::pi * ghz * 1e9 * length_unit_m / speed_of_light;
}

inline double wavenumber_to_ghz(double k) {
    return k * speed_of_light / (2.0 * std::numbers::pi * length_unit_m * 1e9);
}

} // namespace gcm::units
