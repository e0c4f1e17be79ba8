#include "hapslink/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <sstream>

#include "hapslink/error.hpp"
#include "hapslink/version.hpp"

namespace hapslink {

namespace {

void write_meta(std::ostream& os, const RunMetadata& m) {
    os << "# hapslink " << m.tool_version << "\n";
    os << "# scenario_hash " << m.scenario_hash << "\n";
    os << "# seed " << m.seed << "\n";
    if (!m.timestamp.empty()) os << "# timestamp " << m.timestamp << "\n";
    os << "# simulator_defaults ";
    if (m.simulator_defaults.empty()) {
        os << "(none)";
    } else {
        for (std::size_t i = 0; i < m.simulator_defaults.size(); ++i) {
            if (i) os << ",";
            os << m.simulator_defaults[i];
        }
    }
    os << "\n";
}

std::string iso8601_utc(std::time_t t) {
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

RunMetadata make_run_metadata(const Scenario& s, bool stamp) {
    RunMetadata m;
    m.tool_version = kVersion;
    m.scenario_hash = scenario_hash_hex(s);
    m.seed = s.seed;
    m.simulator_defaults = s.defaults_used;
    if (const char* sde = std::getenv("SOURCE_DATE_EPOCH")) {
        char* end = nullptr;
        const long long v = std::strtoll(sde, &end, 10);
        if (end && *end == '\0' && end != sde)
            m.timestamp = iso8601_utc(static_cast<std::time_t>(v));
    } else if (stamp) {
        m.timestamp = iso8601_utc(std::time(nullptr));
    }
    return m;
}

std::string format_sig6(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 6);
    return std::string(buf, res.ptr);
}

void write_coverage_csv(std::ostream& os, const OutageGrid& grid, const RunMetadata& meta) {
    write_meta(os, meta);
    os << "x_m,y_m,z_m,gain_dbi,mean_snr_db,outage\n";
    for (const VoxelRecord& r : grid.records) {
        os << format_sig6(r.center.x()) << "," << format_sig6(r.center.y()) << ","
           << format_sig6(r.center.z()) << "," << format_sig6(r.gain_dbi) << ","
           << format_sig6(r.mean_snr_db) << "," << format_sig6(r.outage) << "\n";
    }
}

void write_sweep_csv(std::ostream& os, std::span<const SweepRow> rows, const RunMetadata& meta) {
    write_meta(os, meta);
    os << "k_db,tx_dbm,avg_outage\n";
    for (const SweepRow& r : rows)
        os << format_sig6(r.k_db) << "," << format_sig6(r.tx_dbm) << ","
           << format_sig6(r.avg_outage) << "\n";
}

void write_cross_section_csv(std::ostream& os, std::span<const GainSample> samples,
                             const RunMetadata& meta) {
    write_meta(os, meta);
    os << "x_m,y_m,z_m,gain_dbi\n";
    for (const GainSample& s : samples)
        os << format_sig6(s.position.x()) << "," << format_sig6(s.position.y()) << ","
           << format_sig6(s.position.z()) << "," << format_sig6(s.gain_dbi) << "\n";
}

void write_fleet_csv(std::ostream& os, const ConnectivityTrace& trace, const RunMetadata& meta) {
    write_meta(os, meta);
    os << "t_s,vehicle_id,x_m,y_m,z_m,serving_id,mean_snr_db,outage\n";
    for (const TraceRecord& r : trace.records) {
        os << format_sig6(r.t_s) << "," << r.vehicle_id << "," << format_sig6(r.position.x())
           << "," << format_sig6(r.position.y()) << "," << format_sig6(r.position.z()) << ","
           << r.serving_id << "," << format_sig6(r.mean_snr_db) << "," << format_sig6(r.outage)
           << "\n";
    }
}

std::string render_heatmap(const OutageGrid& grid, PlaneSel plane, const RunMetadata& meta) {
    if (plane.axis < 0 || plane.axis > 2)
        throw InvalidInputError("render_heatmap: axis must be 0 (x), 1 (y), or 2 (z)");
    const Eigen::Vector3i n = voxel_counts(grid.highway);
    if (plane.index < 0 || plane.index >= n[plane.axis])
        throw InvalidInputError("render_heatmap: plane index out of range");
    const std::size_t total =
        static_cast<std::size_t>(n.x()) * static_cast<std::size_t>(n.y()) *
        static_cast<std::size_t>(n.z());
    if (grid.records.size() != total)
        throw InvalidInputError("render_heatmap: grid does not match its highway voxel counts");

    const int col_axis = plane.axis == 0 ? 1 : 0;
    const int row_axis = plane.axis == 2 ? 1 : 2;

    std::ostringstream ss;
    ss << "P2\n";
    write_meta(ss, meta);
    ss << n[col_axis] << " " << n[row_axis] << "\n255\n";
    for (int r = 0; r < n[row_axis]; ++r) {
        for (int c = 0; c < n[col_axis]; ++c) {
            Eigen::Vector3i idx;
            idx[plane.axis] = plane.index;
            idx[col_axis] = c;
            idx[row_axis] = r;
            const std::size_t flat =
                static_cast<std::size_t>(idx.x()) +
                static_cast<std::size_t>(n.x()) *
                    (static_cast<std::size_t>(idx.y()) +
                     static_cast<std::size_t>(n.y()) * static_cast<std::size_t>(idx.z()));
            const double outage = grid.records[flat].outage;
            int px = static_cast<int>(std::lround(255.0 * (1.0 - outage)));
            px = std::min(255, std::max(0, px));
            ss << px;
            if (c + 1 < n[col_axis]) ss << " ";
        }
        ss << "\n";
    }
    return ss.str();
}

}  // namespace hapslink
