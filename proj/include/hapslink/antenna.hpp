#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hapslink {

enum class PatternVariant {
    // max(main lobe, flat floor at g0 - floor_rel_db); analytically simple,
    // used as the default envelope.
    QuadraticFloor,
    // ITU-R F.1336-5 recommends 3.2.1 peak side-lobe reference pattern.
    ItuF1336Peak,
};

// Axially symmetric directional pattern described by its boresight gain and
// 3 dB beamwidth. `floor_rel_db` is how far below boresight the side-lobe
// floor sits (QuadraticFloor only).
struct AntennaPattern {
    double boresight_gain_dbi = 30.0;
    double beamwidth3db_deg = 5.0;
    PatternVariant variant = PatternVariant::QuadraticFloor;
    double floor_rel_db = 30.0;
};

bool operator==(const AntennaPattern& a, const AntennaPattern& b);

const char* to_string(PatternVariant v);
std::optional<PatternVariant> pattern_variant_from_string(std::string_view s);

// Structural checks; empty result means usable.
// beamwidth must be in (0, 120] deg, floor_rel_db > 0, gain finite.
std::vector<std::string> validate_pattern(const AntennaPattern& pat);

// Throws ConfigError carrying all violations.
void require_valid(const AntennaPattern& pat);

// Gain toward an off-axis angle theta_deg in [0, 180]. The pattern is
// axially symmetric, so callers fold sign before calling: gain(|theta|).
// Throws InvalidInputError for theta outside [0, 180] and ConfigError for
// an invalid pattern.
double gain_dbi(const AntennaPattern& pat, double theta_deg);

}  // namespace hapslink
