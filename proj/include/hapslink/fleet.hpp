#pragma once

#include <span>
#include <string>
#include <vector>

#include "hapslink/coverage.hpp"
#include "hapslink/geometry.hpp"

namespace hapslink {

struct VehicleState {
    Point3 position = Point3::Zero();
    double speed_mps = 0.0;
};

// Leader-follower string moving along +x in one lane. Followers are listed
// nearest-to-leader first and must stay strictly ordered along track.
struct Platoon {
    VehicleState leader;
    std::vector<VehicleState> followers;
    int lane_index = 0;
    double target_spacing_m = 10.0;
    double spacing_gain_per_s = 0.5;  // proportional gap controller
    double speed_limit_mps = 10.0;
};

bool operator==(const VehicleState& a, const VehicleState& b);
bool operator==(const Platoon& a, const Platoon& b);

std::vector<std::string> validate_platoon(const Platoon& p);
void require_valid(const Platoon& p);

// One synchronous kinematic step: speeds update from pre-step gaps
//   v <- clamp(v + gain * (gap - target) * dt, 0, limit)
// then every vehicle advances by its new speed. The leader just cruises at
// min(speed, limit). Throws InvalidStateError if ordering breaks.
Platoon step_platoon(const Platoon& p, double dt_s);

enum class TraceEnd {
    Completed,       // ran the full duration inside the highway
    ExitedHighway,   // a vehicle left the box before the duration elapsed
};

// One row per vehicle per step; vehicle 0 is the leader, follower i is i+1.
struct TraceRecord {
    double t_s = 0.0;
    int vehicle_id = 0;
    Point3 position = Point3::Zero();
    int serving_id = 0;
    double mean_snr_db = 0.0;
    double outage = 0.0;
};

struct ConnectivityTrace {
    double dt_s = 0.0;
    TraceEnd end_reason = TraceEnd::Completed;
    std::vector<TraceRecord> records;
};

// Steps the platoon through the highway and logs, per vehicle and step, the
// serving node (highest mean SNR, ties to the lowest node id) and its link
// metrics. The trace truncates at the step where any vehicle exits the box.
ConnectivityTrace run_traversal(std::span<const NetworkNode> network, const Highway3D& hw,
                                const Platoon& start, double k_db, double rate_bps_hz,
                                double dt_s, double duration_s);

// Number of serving-node changes between consecutive records of one vehicle.
// Throws InvalidInputError if the vehicle never appears in the trace.
int handoff_count(const ConnectivityTrace& trace, int vehicle_id);

}  // namespace hapslink
