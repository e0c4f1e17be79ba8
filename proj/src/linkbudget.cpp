#include "hapslink/linkbudget.hpp"

#include <cmath>
#include <numbers>

#include "hapslink/error.hpp"
#include "hapslink/units.hpp"

namespace hapslink {

bool operator==(const RadioConfig& a, const RadioConfig& b) {
    return a.carrier_hz == b.carrier_hz && a.bandwidth_hz == b.bandwidth_hz &&
           a.temperature_k == b.temperature_k && a.tx_power_dbm == b.tx_power_dbm &&
           a.rx_gain_dbi == b.rx_gain_dbi && a.noise_figure_db == b.noise_figure_db;
}

std::vector<std::string> validate_radio(const RadioConfig& cfg) {
    std::vector<std::string> out;
    if (!std::isfinite(cfg.carrier_hz) || cfg.carrier_hz <= 0.0)
        out.push_back("radio carrier frequency must be > 0 Hz");
    if (!std::isfinite(cfg.bandwidth_hz) || cfg.bandwidth_hz <= 0.0)
        out.push_back("radio bandwidth must be > 0 Hz");
    if (!std::isfinite(cfg.temperature_k) || cfg.temperature_k <= 0.0)
        out.push_back("radio noise temperature must be > 0 K");
    if (!std::isfinite(cfg.tx_power_dbm)) out.push_back("radio transmit power must be finite");
    if (!std::isfinite(cfg.rx_gain_dbi)) out.push_back("radio receive gain must be finite");
    if (!std::isfinite(cfg.noise_figure_db) || cfg.noise_figure_db < 0.0)
        out.push_back("radio noise figure must be >= 0 dB");
    return out;
}

void require_valid(const RadioConfig& cfg) {
    auto v = validate_radio(cfg);
    if (!v.empty()) throw ConfigError(v);
}

double fspl_db(double distance_m, double frequency_hz) {
    if (!std::isfinite(distance_m) || distance_m <= 0.0)
        throw InvalidInputError("fspl_db: distance must be > 0 m");
    if (!std::isfinite(frequency_hz) || frequency_hz <= 0.0)
        throw InvalidInputError("fspl_db: frequency must be > 0 Hz");
    return 20.0 *
           std::log10(4.0 * std::numbers::pi * distance_m * frequency_hz / kSpeedOfLightMps);
}

double noise_dbm(double bandwidth_hz, double temperature_k, double noise_figure_db) {
    if (!std::isfinite(bandwidth_hz) || bandwidth_hz <= 0.0)
        throw InvalidInputError("noise_dbm: bandwidth must be > 0 Hz");
    if (!std::isfinite(temperature_k) || temperature_k <= 0.0)
        throw InvalidInputError("noise_dbm: temperature must be > 0 K");
    if (!std::isfinite(noise_figure_db) || noise_figure_db < 0.0)
        throw InvalidInputError("noise_dbm: noise figure must be >= 0 dB");
    // k T B referenced to 1 mW.
    return 10.0 * std::log10(kBoltzmannJPerK * temperature_k * bandwidth_hz / 1.0e-3) +
           noise_figure_db;
}

double mean_snr_db(const RadioConfig& cfg, double tx_gain_dbi, double distance_m) {
    require_valid(cfg);
    if (!std::isfinite(tx_gain_dbi)) throw InvalidInputError("mean_snr_db: gain must be finite");
    return cfg.tx_power_dbm + tx_gain_dbi + cfg.rx_gain_dbi -
           fspl_db(distance_m, cfg.carrier_hz) -
           noise_dbm(cfg.bandwidth_hz, cfg.temperature_k, cfg.noise_figure_db);
}

}  // namespace hapslink
