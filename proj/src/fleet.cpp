#include "hapslink/fleet.hpp"

#include <algorithm>
#include <cmath>

#include "hapslink/error.hpp"
#include "hapslink/fading.hpp"
#include "hapslink/units.hpp"

namespace hapslink {

bool operator==(const VehicleState& a, const VehicleState& b) {
    return a.position == b.position && a.speed_mps == b.speed_mps;
}

bool operator==(const Platoon& a, const Platoon& b) {
    return a.leader == b.leader && a.followers == b.followers && a.lane_index == b.lane_index &&
           a.target_spacing_m == b.target_spacing_m &&
           a.spacing_gain_per_s == b.spacing_gain_per_s &&
           a.speed_limit_mps == b.speed_limit_mps;
}

std::vector<std::string> validate_platoon(const Platoon& p) {
    std::vector<std::string> out;
    if (!p.leader.position.allFinite() || !std::isfinite(p.leader.speed_mps) ||
        p.leader.speed_mps < 0.0)
        out.push_back("leader state must be finite with speed >= 0");
    for (std::size_t i = 0; i < p.followers.size(); ++i) {
        const VehicleState& f = p.followers[i];
        if (!f.position.allFinite() || !std::isfinite(f.speed_mps) || f.speed_mps < 0.0)
            out.push_back("follower " + std::to_string(i) +
                          " state must be finite with speed >= 0");
    }
    if (out.empty()) {
        double prev_x = p.leader.position.x();
        for (std::size_t i = 0; i < p.followers.size(); ++i) {
            if (p.followers[i].position.x() >= prev_x) {
                out.push_back("followers must be strictly behind their predecessor along +x");
                break;
            }
            prev_x = p.followers[i].position.x();
        }
    }
    if (p.lane_index < 0) out.push_back("lane index must be >= 0");
    if (!std::isfinite(p.target_spacing_m) || p.target_spacing_m <= 0.0)
        out.push_back("target spacing must be > 0 m");
    if (!std::isfinite(p.spacing_gain_per_s) || p.spacing_gain_per_s <= 0.0)
        out.push_back("spacing gain must be > 0 1/s");
    if (!std::isfinite(p.speed_limit_mps) || p.speed_limit_mps <= 0.0)
        out.push_back("speed limit must be > 0 m/s");
    return out;
}

void require_valid(const Platoon& p) {
    auto v = validate_platoon(p);
    if (!v.empty()) throw ConfigError(v);
}

Platoon step_platoon(const Platoon& p, double dt_s) {
    require_valid(p);
    if (!std::isfinite(dt_s) || dt_s <= 0.0)
        throw InvalidInputError("step_platoon: dt must be > 0 s");

    Platoon out = p;
    out.leader.speed_mps = std::min(p.leader.speed_mps, p.speed_limit_mps);

    // Gaps are measured on pre-step positions (synchronous update), so an
    // exactly spaced platoon keeps its speeds bit-for-bit.
    double pred_x = p.leader.position.x();
    for (std::size_t i = 0; i < p.followers.size(); ++i) {
        const double gap = pred_x - p.followers[i].position.x();
        const double v = p.followers[i].speed_mps +
                         p.spacing_gain_per_s * (gap - p.target_spacing_m) * dt_s;
        out.followers[i].speed_mps = std::clamp(v, 0.0, p.speed_limit_mps);
        pred_x = p.followers[i].position.x();
    }

    out.leader.position.x() += out.leader.speed_mps * dt_s;
    for (std::size_t i = 0; i < out.followers.size(); ++i)
        out.followers[i].position.x() += out.followers[i].speed_mps * dt_s;

    double prev_x = out.leader.position.x();
    for (const VehicleState& f : out.followers) {
        if (f.position.x() >= prev_x)
            throw InvalidStateError("step_platoon: follower overtook its predecessor");
        prev_x = f.position.x();
    }
    return out;
}

namespace {

struct Best {
    int id = 0;
    double snr_db = 0.0;
};

Best best_server(std::span<const NetworkNode> network, const Point3& at) {
    Best best{0, node_mean_snr_db(network[0], at)};
    for (std::size_t i = 1; i < network.size(); ++i) {
        const double snr = node_mean_snr_db(network[i], at);
        // Strict > keeps ties on the lowest node id.
        if (snr > best.snr_db) best = {static_cast<int>(i), snr};
    }
    return best;
}

}  // namespace

ConnectivityTrace run_traversal(std::span<const NetworkNode> network, const Highway3D& hw,
                                const Platoon& start, double k_db, double rate_bps_hz,
                                double dt_s, double duration_s) {
    if (network.empty()) throw InvalidInputError("run_traversal: network must not be empty");
    for (const NetworkNode& n : network) {
        auto v = validate_node(n);
        if (!v.empty()) throw ConfigError(v);
    }
    require_valid(hw);
    require_valid(start);
    if (!std::isfinite(dt_s) || dt_s <= 0.0)
        throw InvalidInputError("run_traversal: dt must be > 0 s");
    if (!std::isfinite(duration_s) || duration_s < dt_s)
        throw InvalidInputError("run_traversal: duration must be >= dt");
    if (!std::isfinite(k_db)) throw InvalidInputError("run_traversal: K factor must be finite");
    if (!std::isfinite(rate_bps_hz) || rate_bps_hz <= 0.0)
        throw InvalidInputError("run_traversal: rate must be > 0 b/s/Hz");

    auto inside = [&](const Platoon& p) {
        if (!contains(hw, p.leader.position)) return false;
        for (const VehicleState& f : p.followers)
            if (!contains(hw, f.position)) return false;
        return true;
    };
    if (!inside(start))
        throw InvalidInputError("run_traversal: platoon must start inside the highway");

    const double k_lin = db_to_linear(k_db);
    const std::size_t steps =
        static_cast<std::size_t>(std::floor(duration_s / dt_s + 1e-9));

    ConnectivityTrace trace;
    trace.dt_s = dt_s;
    trace.records.reserve((start.followers.size() + 1) * steps);

    auto log_vehicle = [&](double t, int vid, const Point3& pos) {
        const Best b = best_server(network, pos);
        const double outage = ricean_outage({db_to_linear(b.snr_db), k_lin, rate_bps_hz});
        trace.records.push_back({t, vid, pos, b.id, b.snr_db, outage});
    };

    Platoon p = start;
    for (std::size_t s = 1; s <= steps; ++s) {
        p = step_platoon(p, dt_s);
        if (!inside(p)) {
            trace.end_reason = TraceEnd::ExitedHighway;
            return trace;
        }
        const double t = static_cast<double>(s) * dt_s;
        log_vehicle(t, 0, p.leader.position);
        for (std::size_t i = 0; i < p.followers.size(); ++i)
            log_vehicle(t, static_cast<int>(i) + 1, p.followers[i].position);
    }
    trace.end_reason = TraceEnd::Completed;
    return trace;
}

int handoff_count(const ConnectivityTrace& trace, int vehicle_id) {
    bool seen = false;
    int prev = 0;
    int count = 0;
    for (const TraceRecord& r : trace.records) {
        if (r.vehicle_id != vehicle_id) continue;
        if (seen && r.serving_id != prev) ++count;
        prev = r.serving_id;
        seen = true;
    }
    if (!seen) throw InvalidInputError("handoff_count: vehicle not present in trace");
    return count;
}

}  // namespace hapslink
