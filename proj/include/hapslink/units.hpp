#pragma once

#include <cmath>
#include <numbers>

namespace hapslink {

inline constexpr double kSpeedOfLightMps = 299792458.0;
inline constexpr double kBoltzmannJPerK = 1.380649e-23;

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

inline double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

inline double celsius_to_kelvin(double c) { return c + 273.15; }
inline double kelvin_to_celsius(double k) { return k - 273.15; }

}  // namespace hapslink
