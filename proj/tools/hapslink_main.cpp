#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hapslink/error.hpp"
#include "hapslink/io.hpp"
#include "hapslink/scenario.hpp"
#include "hapslink/version.hpp"

namespace fs = std::filesystem;
using namespace hapslink;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read scenario file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open output file: " + path.string());
    out << bytes;
    if (!out) throw Error("failed writing output file: " + path.string());
}

unsigned resolve_workers(const std::optional<unsigned>& flag) {
    if (flag) {
        if (*flag == 0) throw ConfigError("--workers must be >= 1");
        return *flag;
    }
    if (const char* env = std::getenv("HAPSLINK_WORKERS")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (!end || *end != '\0' || end == env || v == 0) {
            std::cerr << "warning: ignoring invalid HAPSLINK_WORKERS value\n";
            return 1;
        }
        return static_cast<unsigned>(v);
    }
    return 1;
}

PlaneSel parse_plane(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 >= text.size())
        throw ConfigError("--plane must look like axis:index, e.g. z:0");
    const std::string axis = text.substr(0, colon);
    PlaneSel sel;
    if (axis == "x") sel.axis = 0;
    else if (axis == "y") sel.axis = 1;
    else if (axis == "z") sel.axis = 2;
    else throw ConfigError("--plane axis must be x, y, or z");
    try {
        sel.index = std::stoi(text.substr(colon + 1));
    } catch (const std::exception&) {
        throw ConfigError("--plane index must be an integer");
    }
    if (sel.index < 0) throw ConfigError("--plane index must be >= 0");
    return sel;
}

// Slice label for filenames, e.g. z0.
std::string plane_tag(const PlaneSel& sel) {
    static const char* axis = "xyz";
    return std::string(1, axis[sel.axis]) + std::to_string(sel.index);
}

struct CommonArgs {
    std::string scenario_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> workers;
    bool stamp = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--scenario", args.scenario_path, "Scenario JSON file")->required();
    cmd->add_option("--out", args.out_dir, "Output directory (created if missing)");
    cmd->add_option("--seed", args.seed, "Override the scenario seed");
    cmd->add_option("--workers", args.workers,
                    "Worker threads (default: HAPSLINK_WORKERS or 1)");
    cmd->add_flag("--stamp", args.stamp, "Embed a wall-clock timestamp in artifacts");
}

struct LoadedScenario {
    Scenario scenario;
    RunMetadata meta;
    unsigned workers = 1;
};

LoadedScenario load(const CommonArgs& args) {
    std::vector<std::string> warnings;
    Scenario s = parse_scenario(read_file(args.scenario_path), &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
    if (args.seed) s.seed = *args.seed;
    LoadedScenario out{s, make_run_metadata(s, args.stamp), resolve_workers(args.workers)};
    return out;
}

int run_validate(const CommonArgs& args) {
    std::vector<std::string> warnings;
    const Scenario s = parse_scenario(read_file(args.scenario_path), &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
    std::cout << "scenario OK (hash " << scenario_hash_hex(s) << ")\n";
    if (s.defaults_used.empty()) {
        std::cout << "simulator defaults: (none)\n";
    } else {
        std::cout << "simulator defaults:\n";
        for (const auto& d : s.defaults_used) std::cout << "  " << d << "\n";
    }
    return 0;
}

int run_coverage(const CommonArgs& args, const std::vector<std::string>& plane_args) {
    const LoadedScenario ls = load(args);
    std::vector<PlaneSel> planes;
    for (const auto& p : plane_args) planes.push_back(parse_plane(p));
    if (planes.empty()) planes.push_back({2, 0});

    fs::create_directories(args.out_dir);
    for (double k : ls.scenario.k_db_list) {
        const OutageGrid grid = outage_map(NetworkNode{ls.scenario.haps}, ls.scenario.highway,
                                           k, ls.scenario.rate_bps_hz, ls.workers);
        const std::string base = "coverage_k" + format_sig6(k);
        {
            std::ostringstream csv;
            write_coverage_csv(csv, grid, ls.meta);
            write_file(fs::path(args.out_dir) / (base + ".csv"), csv.str());
        }
        for (const PlaneSel& sel : planes)
            write_file(fs::path(args.out_dir) / (base + "_" + plane_tag(sel) + ".pgm"),
                       render_heatmap(grid, sel, ls.meta));
        std::cout << "k_db=" << format_sig6(k)
                  << " avg_outage=" << format_sig6(volumetric_average(grid)) << "\n";
    }
    return 0;
}

int run_sweep(const CommonArgs& args) {
    const LoadedScenario ls = load(args);
    const auto rows = sweep(NetworkNode{ls.scenario.haps}, ls.scenario.highway,
                            ls.scenario.k_db_list, ls.scenario.tx_dbm_list,
                            ls.scenario.rate_bps_hz, ls.workers);
    fs::create_directories(args.out_dir);
    std::ostringstream csv;
    write_sweep_csv(csv, rows, ls.meta);
    write_file(fs::path(args.out_dir) / "sweep.csv", csv.str());
    std::cout << "sweep rows=" << rows.size() << "\n";
    return 0;
}

int run_cross_section(const CommonArgs& args) {
    const LoadedScenario ls = load(args);
    const auto samples = gain_cross_section(NetworkNode{ls.scenario.haps}, ls.scenario.highway);
    fs::create_directories(args.out_dir);
    std::ostringstream csv;
    write_cross_section_csv(csv, samples, ls.meta);
    write_file(fs::path(args.out_dir) / "crosssection.csv", csv.str());
    double lo = samples.front().gain_dbi, hi = lo;
    for (const auto& s : samples) {
        lo = std::min(lo, s.gain_dbi);
        hi = std::max(hi, s.gain_dbi);
    }
    std::cout << "gain_min_dbi=" << format_sig6(lo) << " gain_max_dbi=" << format_sig6(hi)
              << " spread_db=" << format_sig6(hi - lo) << "\n";
    return 0;
}

int run_fleet(const CommonArgs& args) {
    const LoadedScenario ls = load(args);
    if (!ls.scenario.fleet)
        throw ConfigError("fleet subcommand needs a \"fleet\" section in the scenario");
    std::vector<NetworkNode> network;
    network.emplace_back(ls.scenario.haps);
    for (const auto& bs : ls.scenario.terrestrial) network.emplace_back(bs);

    const FleetConfig& fc = *ls.scenario.fleet;
    const ConnectivityTrace trace =
        run_traversal(network, ls.scenario.highway, fc.platoon, ls.scenario.k_db_list.front(),
                      ls.scenario.rate_bps_hz, fc.dt_s, fc.duration_s);

    fs::create_directories(args.out_dir);
    std::ostringstream csv;
    write_fleet_csv(csv, trace, ls.meta);
    write_file(fs::path(args.out_dir) / "fleet_trace.csv", csv.str());

    std::cout << "end_reason="
              << (trace.end_reason == TraceEnd::Completed ? "completed" : "exited_highway")
              << "\n";
    const int vehicles = static_cast<int>(fc.platoon.followers.size()) + 1;
    for (int vid = 0; vid < vehicles; ++vid)
        std::cout << "vehicle=" << vid << " handoffs=" << handoff_count(trace, vid) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"HAPS-to-ground connectivity over voxelized aerial delivery corridors"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    CommonArgs args;
    std::vector<std::string> plane_args;

    CLI::App* validate = app.add_subcommand("validate", "Parse and validate a scenario");
    add_common(validate, args);

    CLI::App* coverage =
        app.add_subcommand("coverage", "Per-voxel outage maps, one per K factor");
    add_common(coverage, args);
    coverage->add_option("--plane", plane_args,
                         "Heatmap slice axis:index (repeatable, default z:0)");

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "Volumetric outage over K and tx power");
    add_common(sweep_cmd, args);

    CLI::App* cross =
        app.add_subcommand("crosssection", "Transmit gain over the corridor voxels");
    add_common(cross, args);

    CLI::App* fleet = app.add_subcommand("fleet", "Platoon traversal connectivity trace");
    add_common(fleet, args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (validate->parsed()) return run_validate(args);
        if (coverage->parsed()) return run_coverage(args, plane_args);
        if (sweep_cmd->parsed()) return run_sweep(args);
        if (cross->parsed()) return run_cross_section(args);
        if (fleet->parsed()) return run_fleet(args);
    } catch (const ParseError& e) {
        std::cerr << "error: scenario parse failed at line " << e.line() << ", column "
                  << e.column() << ": " << e.what() << "\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "error: scenario is invalid:\n";
        for (const auto& v : e.violations()) std::cerr << "  - " << v << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
