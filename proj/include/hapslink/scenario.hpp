#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hapslink/coverage.hpp"
#include "hapslink/fleet.hpp"

namespace hapslink {

struct FleetConfig {
    Platoon platoon;
    double dt_s = 1.0;
    double duration_s = 100.0;
};

bool operator==(const FleetConfig& a, const FleetConfig& b);

// Complete simulation input. `defaults_used` lists the key paths that the
// parser filled with simulator defaults (values not pinned by measurement),
// so artifacts can disclose them.
struct Scenario {
    HapsNode haps;
    std::vector<TerrestrialBs> terrestrial;
    Highway3D highway;
    std::vector<double> k_db_list{0.0, 5.0, 10.0};
    std::vector<double> tx_dbm_list{30.0, 35.0, 40.0, 45.0, 50.0};
    double rate_bps_hz = 1.0;
    std::uint64_t seed = 12345;
    std::optional<FleetConfig> fleet;
    std::vector<std::string> defaults_used;
};

// Field-by-field content equality; provenance (defaults_used) is ignored.
bool semantically_equal(const Scenario& a, const Scenario& b);

struct ValidationReport {
    std::vector<std::string> violations;
    std::vector<std::string> warnings;
    bool ok() const { return violations.empty(); }
};

// Aggregates every violation and advisory across nodes, highway, sweep
// lists, and fleet instead of stopping at the first.
ValidationReport validate_scenario(const Scenario& s);

// Built-in baseline: 10 GHz carrier, 10 MHz bandwidth, 24 C, rate 1 b/s/Hz,
// stratospheric node at 20 km aiming 10 km ahead, 100 x 10 x 100 m corridor
// on a 10 m grid.
Scenario table1_default();

// Parses and validates scenario JSON. Throws ParseError (with line/column)
// for malformed JSON and ConfigError (with the full key list) for semantic
// violations. Unknown keys only produce warnings.
Scenario parse_scenario(std::string_view json_text,
                        std::vector<std::string>* warnings = nullptr);

// Canonical form: sorted keys, two-space indent, every field explicit in the
// same human units the parser accepts (GHz, MHz, Celsius, meters).
std::string serialize_scenario(const Scenario& s);

// FNV-1a 64 over the canonical serialization.
std::uint64_t scenario_hash(const Scenario& s);
std::string scenario_hash_hex(const Scenario& s);

}  // namespace hapslink
