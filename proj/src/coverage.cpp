#include "hapslink/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "hapslink/error.hpp"
#include "hapslink/fading.hpp"
#include "hapslink/units.hpp"

namespace hapslink {

namespace {

// Hard altitude envelope for a stratospheric platform; the ITU band proper
// is 20-50 km and 18-20 km only earns a warning.
constexpr double kHapsMinAltM = 18000.0;
constexpr double kHapsMaxAltM = 50000.0;
constexpr double kItuBandLowM = 20000.0;

const Point3& node_position(const NetworkNode& node) {
    return std::visit([](const auto& n) -> const Point3& { return n.position; }, node);
}

const RadioConfig& node_radio(const NetworkNode& node) {
    return std::visit([](const auto& n) -> const RadioConfig& { return n.radio; }, node);
}

// Runs fn(i) for i in [0, n) over contiguous index blocks. Every slot is
// written exactly once, so the result is worker-count invariant.
template <typename Fn>
void parallel_for_index(std::size_t n, unsigned workers, Fn&& fn) {
    const std::size_t w = std::max<std::size_t>(1, std::min<std::size_t>(workers, n));
    if (w == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::jthread> threads;
    threads.reserve(w);
    for (std::size_t t = 0; t < w; ++t) {
        const std::size_t lo = n * t / w;
        const std::size_t hi = n * (t + 1) / w;
        threads.emplace_back([&fn, lo, hi] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
}

void require_valid_node(const NetworkNode& node) {
    auto v = validate_node(node);
    if (!v.empty()) throw ConfigError(v);
}

}  // namespace

bool operator==(const Sector& a, const Sector& b) {
    return a.azimuth_deg == b.azimuth_deg && a.downtilt_deg == b.downtilt_deg;
}

bool operator==(const HapsNode& a, const HapsNode& b) {
    return a.position == b.position && a.aim_point == b.aim_point && a.radio == b.radio &&
           a.pattern == b.pattern;
}

bool operator==(const TerrestrialBs& a, const TerrestrialBs& b) {
    return a.position == b.position && a.sectors == b.sectors && a.radio == b.radio &&
           a.pattern == b.pattern;
}

std::vector<std::string> validate_node(const HapsNode& node) {
    std::vector<std::string> out;
    if (!node.position.allFinite()) {
        out.push_back("haps position must be finite");
    } else if (node.position.z() < kHapsMinAltM || node.position.z() > kHapsMaxAltM) {
        out.push_back("haps altitude must be in [18000, 50000] m");
    }
    if (!node.aim_point.allFinite()) {
        out.push_back("haps aim point must be finite");
    } else if (node.position.allFinite() && node.aim_point == node.position) {
        out.push_back("haps aim point must differ from its position");
    }
    for (auto& v : validate_radio(node.radio)) out.push_back("haps " + v);
    for (auto& v : validate_pattern(node.pattern)) out.push_back("haps " + v);
    return out;
}

std::vector<std::string> validate_node(const TerrestrialBs& node) {
    std::vector<std::string> out;
    if (!node.position.allFinite()) {
        out.push_back("terrestrial position must be finite");
    } else if (node.position.z() < 0.0) {
        out.push_back("terrestrial antenna height must be >= 0 m");
    }
    if (node.sectors.empty()) out.push_back("terrestrial node must have at least one sector");
    for (std::size_t i = 0; i < node.sectors.size(); ++i) {
        const Sector& s = node.sectors[i];
        if (!std::isfinite(s.azimuth_deg))
            out.push_back("sector " + std::to_string(i) + " azimuth must be finite");
        if (!std::isfinite(s.downtilt_deg) || s.downtilt_deg < -90.0 || s.downtilt_deg > 90.0)
            out.push_back("sector " + std::to_string(i) + " downtilt must be in [-90, 90] deg");
    }
    for (auto& v : validate_radio(node.radio)) out.push_back("terrestrial " + v);
    for (auto& v : validate_pattern(node.pattern)) out.push_back("terrestrial " + v);
    return out;
}

std::vector<std::string> validate_node(const NetworkNode& node) {
    return std::visit([](const auto& n) { return validate_node(n); }, node);
}

std::vector<std::string> node_warnings(const HapsNode& node) {
    std::vector<std::string> out;
    if (node.position.allFinite() && node.position.z() >= kHapsMinAltM &&
        node.position.z() < kItuBandLowM)
        out.push_back("haps altitude is below the 20-50 km ITU band");
    return out;
}

Vec3 sector_boresight(const Sector& s) {
    const double az = deg_to_rad(s.azimuth_deg);
    const double tilt = deg_to_rad(s.downtilt_deg);
    return Vec3(std::cos(tilt) * std::cos(az), std::cos(tilt) * std::sin(az), -std::sin(tilt));
}

double node_gain_dbi(const HapsNode& node, const Point3& target) {
    const Vec3 bs = boresight_from_aimpoint(node.position, node.aim_point);
    return gain_dbi(node.pattern, off_axis_angle_deg(node.position, bs, target));
}

double node_gain_dbi(const TerrestrialBs& node, const Point3& target) {
    if (node.sectors.empty())
        throw ConfigError("terrestrial node must have at least one sector");
    double best = -1e300;
    for (const Sector& s : node.sectors) {
        const double g =
            gain_dbi(node.pattern, off_axis_angle_deg(node.position, sector_boresight(s), target));
        best = std::max(best, g);
    }
    return best;
}

double node_gain_dbi(const NetworkNode& node, const Point3& target) {
    return std::visit([&](const auto& n) { return node_gain_dbi(n, target); }, node);
}

double node_mean_snr_db(const NetworkNode& node, const Point3& target) {
    const Point3& pos = node_position(node);
    return mean_snr_db(node_radio(node), node_gain_dbi(node, target),
                       slant_range(pos, target));
}

OutageGrid outage_map(const NetworkNode& node, const Highway3D& hw, double k_db,
                      double rate_bps_hz, unsigned workers) {
    require_valid_node(node);
    if (!std::isfinite(k_db)) throw InvalidInputError("outage_map: K factor must be finite");
    if (!std::isfinite(rate_bps_hz) || rate_bps_hz <= 0.0)
        throw InvalidInputError("outage_map: rate must be > 0 b/s/Hz");

    OutageGrid grid;
    grid.highway = hw;
    grid.k_db = k_db;
    grid.rate_bps_hz = rate_bps_hz;

    const std::vector<Point3> centers = voxel_centers(hw);
    grid.records.resize(centers.size());
    const double k_lin = db_to_linear(k_db);

    parallel_for_index(centers.size(), workers, [&](std::size_t i) {
        VoxelRecord& rec = grid.records[i];
        rec.center = centers[i];
        rec.gain_dbi = node_gain_dbi(node, centers[i]);
        rec.mean_snr_db = node_mean_snr_db(node, centers[i]);
        rec.outage = ricean_outage({db_to_linear(rec.mean_snr_db), k_lin, rate_bps_hz});
    });
    return grid;
}

double volumetric_average(const OutageGrid& grid) {
    if (grid.records.empty())
        throw InvalidInputError("volumetric_average: grid has no voxels");
    double sum = 0.0;
    for (const VoxelRecord& r : grid.records) sum += r.outage;
    return sum / static_cast<double>(grid.records.size());
}

std::vector<SweepRow> sweep(const NetworkNode& node, const Highway3D& hw,
                            std::span<const double> k_db_list,
                            std::span<const double> tx_dbm_list, double rate_bps_hz,
                            unsigned workers) {
    require_valid_node(node);
    if (k_db_list.empty()) throw InvalidInputError("sweep: K list must not be empty");
    if (tx_dbm_list.empty()) throw InvalidInputError("sweep: tx power list must not be empty");
    for (double k : k_db_list)
        if (!std::isfinite(k)) throw InvalidInputError("sweep: K entries must be finite");
    for (double tx : tx_dbm_list)
        if (!std::isfinite(tx)) throw InvalidInputError("sweep: tx entries must be finite");
    if (!std::isfinite(rate_bps_hz) || rate_bps_hz <= 0.0)
        throw InvalidInputError("sweep: rate must be > 0 b/s/Hz");

    const std::vector<Point3> centers = voxel_centers(hw);
    const RadioConfig& radio = node_radio(node);
    const Point3& pos = node_position(node);
    const double noise =
        noise_dbm(radio.bandwidth_hz, radio.temperature_k, radio.noise_figure_db);

    // Geometry and gain are independent of (K, tx), so evaluate them once.
    std::vector<double> gain(centers.size());
    std::vector<double> path_loss(centers.size());
    parallel_for_index(centers.size(), workers, [&](std::size_t i) {
        gain[i] = node_gain_dbi(node, centers[i]);
        path_loss[i] = fspl_db(slant_range(pos, centers[i]), radio.carrier_hz);
    });

    std::vector<SweepRow> rows;
    rows.reserve(k_db_list.size() * tx_dbm_list.size());
    std::vector<double> outage(centers.size());
    for (double k : k_db_list) {
        const double k_lin = db_to_linear(k);
        for (double tx : tx_dbm_list) {
            parallel_for_index(centers.size(), workers, [&](std::size_t i) {
                const double snr_db = tx + gain[i] + radio.rx_gain_dbi - path_loss[i] - noise;
                outage[i] = ricean_outage({db_to_linear(snr_db), k_lin, rate_bps_hz});
            });
            // Sequential index-order reduction keeps the value independent
            // of the worker count.
            double sum = 0.0;
            for (double o : outage) sum += o;
            rows.push_back({k, tx, sum / static_cast<double>(centers.size())});
        }
    }
    return rows;
}

std::vector<GainSample> gain_cross_section(const NetworkNode& node, const Highway3D& hw) {
    require_valid_node(node);
    const std::vector<Point3> centers = voxel_centers(hw);
    std::vector<GainSample> out(centers.size());
    for (std::size_t i = 0; i < centers.size(); ++i)
        out[i] = {centers[i], node_gain_dbi(node, centers[i])};
    return out;
}

}  // namespace hapslink
