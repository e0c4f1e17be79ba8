#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "hapslink/antenna.hpp"
#include "hapslink/geometry.hpp"
#include "hapslink/linkbudget.hpp"

namespace hapslink {

// Stratospheric platform with a single steerable beam aimed at a ground
// reference point. ITU assigns HAPS the 20-50 km band; the simulator accepts
// 18-50 km and flags 18-20 km with a warning.
struct HapsNode {
    Point3 position{0.0, 0.0, 20000.0};
    Point3 aim_point{10000.0, 500.0, 0.0};
    RadioConfig radio;
    AntennaPattern pattern;
};

struct Sector {
    double azimuth_deg = 0.0;   // CCW from +x in the horizontal plane
    double downtilt_deg = 0.0;  // positive tilts the beam below horizontal
};

// Ground site with one pattern reused across its sectors; the gain toward a
// target is the best sector's gain.
struct TerrestrialBs {
    Point3 position{0.0, 0.0, 30.0};
    std::vector<Sector> sectors;
    RadioConfig radio;
    AntennaPattern pattern;
};

using NetworkNode = std::variant<HapsNode, TerrestrialBs>;

bool operator==(const Sector& a, const Sector& b);
bool operator==(const HapsNode& a, const HapsNode& b);
bool operator==(const TerrestrialBs& a, const TerrestrialBs& b);

std::vector<std::string> validate_node(const HapsNode& node);
std::vector<std::string> validate_node(const TerrestrialBs& node);
std::vector<std::string> validate_node(const NetworkNode& node);

// Soft advisories (altitude outside the 20-50 km ITU band but still legal).
std::vector<std::string> node_warnings(const HapsNode& node);

// Unit boresight of a sector from azimuth/downtilt.
Vec3 sector_boresight(const Sector& s);

// Transmit gain toward a target point, pattern folded over off-axis angle.
double node_gain_dbi(const HapsNode& node, const Point3& target);
double node_gain_dbi(const TerrestrialBs& node, const Point3& target);
double node_gain_dbi(const NetworkNode& node, const Point3& target);

// Mean received SNR at the target over the node's link budget.
double node_mean_snr_db(const NetworkNode& node, const Point3& target);

struct VoxelRecord {
    Point3 center = Point3::Zero();
    double gain_dbi = 0.0;
    double mean_snr_db = 0.0;
    double outage = 0.0;
};

// Per-voxel link metrics over a highway, records in voxel_centers order.
struct OutageGrid {
    Highway3D highway;
    double k_db = 0.0;
    double rate_bps_hz = 1.0;
    std::vector<VoxelRecord> records;
};

// Evaluates every voxel center against one node. Voxels are independent, so
// `workers` only partitions the index range; results are identical for any
// worker count.
OutageGrid outage_map(const NetworkNode& node, const Highway3D& hw, double k_db,
                      double rate_bps_hz, unsigned workers = 1);

// Unweighted mean outage across all voxels. Throws on an empty grid.
double volumetric_average(const OutageGrid& grid);

struct SweepRow {
    double k_db = 0.0;
    double tx_dbm = 0.0;
    double avg_outage = 0.0;
};

// Volumetric average for every (K, tx power) pair; rows K-major, tx-minor.
std::vector<SweepRow> sweep(const NetworkNode& node, const Highway3D& hw,
                            std::span<const double> k_db_list,
                            std::span<const double> tx_dbm_list, double rate_bps_hz,
                            unsigned workers = 1);

struct GainSample {
    Point3 position = Point3::Zero();
    double gain_dbi = 0.0;
};

// Transmit gain sampled at the highway voxel centers (no link budget);
// shows how flat the beam is across the corridor volume.
std::vector<GainSample> gain_cross_section(const NetworkNode& node, const Highway3D& hw);

}  // namespace hapslink
