#pragma once

#include <string>
#include <vector>

namespace hapslink {

// Transmit/receive chain shared by every node type. Receiver antenna gain
// and noise figure model the drone end of the link.
struct RadioConfig {
    double carrier_hz = 10.0e9;
    double bandwidth_hz = 10.0e6;
    double temperature_k = 297.15;
    double tx_power_dbm = 40.0;
    double rx_gain_dbi = 0.0;
    double noise_figure_db = 0.0;
};

bool operator==(const RadioConfig& a, const RadioConfig& b);

// Structural checks; empty result means usable.
std::vector<std::string> validate_radio(const RadioConfig& cfg);

// Throws ConfigError carrying all violations.
void require_valid(const RadioConfig& cfg);

// Free-space path loss 20 log10(4 pi d f / c), positive dB.
// Throws InvalidInputError unless d > 0 and f > 0.
double fspl_db(double distance_m, double frequency_hz);

// Thermal noise floor 10 log10(k T B / 1 mW) + NF, in dBm.
// Throws InvalidInputError unless B > 0 and T > 0 and NF >= 0.
double noise_dbm(double bandwidth_hz, double temperature_k, double noise_figure_db);

// Mean received SNR in dB for a transmit antenna gain toward the target and
// a slant distance: tx power + gains - FSPL - noise floor.
double mean_snr_db(const RadioConfig& cfg, double tx_gain_dbi, double distance_m);

}  // namespace hapslink
