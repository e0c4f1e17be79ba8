#include "hapslink/antenna.hpp"

#include <cmath>

#include "hapslink/error.hpp"

namespace hapslink {

bool operator==(const AntennaPattern& a, const AntennaPattern& b) {
    return a.boresight_gain_dbi == b.boresight_gain_dbi &&
           a.beamwidth3db_deg == b.beamwidth3db_deg && a.variant == b.variant &&
           a.floor_rel_db == b.floor_rel_db;
}

const char* to_string(PatternVariant v) {
    switch (v) {
        case PatternVariant::QuadraticFloor: return "quadratic-floor";
        case PatternVariant::ItuF1336Peak: return "itu-f1336-peak";
    }
    return "unknown";
}

std::optional<PatternVariant> pattern_variant_from_string(std::string_view s) {
    if (s == "quadratic-floor") return PatternVariant::QuadraticFloor;
    if (s == "itu-f1336-peak") return PatternVariant::ItuF1336Peak;
    return std::nullopt;
}

std::vector<std::string> validate_pattern(const AntennaPattern& pat) {
    std::vector<std::string> out;
    if (!std::isfinite(pat.boresight_gain_dbi))
        out.push_back("pattern boresight gain must be finite");
    if (!std::isfinite(pat.beamwidth3db_deg) || pat.beamwidth3db_deg <= 0.0 ||
        pat.beamwidth3db_deg > 120.0)
        out.push_back("pattern 3 dB beamwidth must be in (0, 120] degrees");
    if (pat.variant == PatternVariant::QuadraticFloor &&
        (!std::isfinite(pat.floor_rel_db) || pat.floor_rel_db <= 0.0))
        out.push_back("pattern side-lobe floor offset must be > 0 dB");
    return out;
}

void require_valid(const AntennaPattern& pat) {
    auto v = validate_pattern(pat);
    if (!v.empty()) throw ConfigError(v);
}

double gain_dbi(const AntennaPattern& pat, double theta_deg) {
    require_valid(pat);
    if (!(theta_deg >= 0.0) || !(theta_deg <= 180.0))
        throw InvalidInputError("gain_dbi: off-axis angle must be in [0, 180] degrees");

    const double g0 = pat.boresight_gain_dbi;
    const double t3 = pat.beamwidth3db_deg;
    const double main_lobe = g0 - 12.0 * (theta_deg / t3) * (theta_deg / t3);

    switch (pat.variant) {
        case PatternVariant::QuadraticFloor:
            return std::max(main_lobe, g0 - pat.floor_rel_db);
        case PatternVariant::ItuF1336Peak:
            // ITU-R F.1336-5, recommends 3.2.1: peak side-lobe reference
            // pattern for symmetric beams, 6-70 GHz. Quadratic main lobe up
            // to the 12 dB point, then a 15 dB/decade roll-off; the two
            // branches meet at theta3 (both give g0 - 12).
            if (theta_deg < t3) return main_lobe;
            return g0 - 12.0 - 15.0 * std::log10(theta_deg / t3);
    }
    throw InvalidInputError("gain_dbi: unknown pattern variant");
}

}  // namespace hapslink
