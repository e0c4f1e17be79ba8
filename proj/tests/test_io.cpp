#include <doctest.h>

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "hapslink/error.hpp"
#include "hapslink/io.hpp"
#include "hapslink/version.hpp"

using namespace hapslink;

namespace {

RunMetadata plain_meta() {
    RunMetadata m;
    m.tool_version = "0.1.0";
    m.scenario_hash = "deadbeef01234567";
    m.seed = 42;
    m.simulator_defaults = {"k_db_list", "seed"};
    return m;
}

// 2 x 1 x 2 voxel corridor with hand-picked link values so artifact bytes are
// fully predictable.
OutageGrid tiny_grid() {
    OutageGrid g;
    g.highway.origin = Point3(0.0, 0.0, 0.0);
    g.highway.extent_m = Vec3(20.0, 10.0, 20.0);
    g.highway.step_m = Vec3(10.0, 10.0, 10.0);
    g.highway.ceiling_m = 121.0;
    g.highway.lanes = {{0.0, 20.0, 10.0}};
    g.k_db = 0.0;
    g.rate_bps_hz = 1.0;
    g.records = {
        {Point3(5.0, 5.0, 5.0), 1.5, 10.25, 0.5},
        {Point3(15.0, 5.0, 5.0), 1.5, 10.25, 0.25},
        {Point3(5.0, 5.0, 15.0), -2.0, 3.0, 1.0},
        {Point3(15.0, 5.0, 15.0), -2.0, 3.0, 0.0},
    };
    return g;
}

// RAII guard so environment mutations cannot leak across tests.
class EnvVarGuard {
public:
    explicit EnvVarGuard(const char* name) : name_(name) {
        const char* old = std::getenv(name);
        if (old) saved_ = old;
        had_ = old != nullptr;
    }
    ~EnvVarGuard() {
        if (had_) {
            ::setenv(name_, saved_.c_str(), 1);
        } else {
            ::unsetenv(name_);
        }
    }

private:
    const char* name_;
    std::string saved_;
    bool had_ = false;
};

}  // namespace

TEST_CASE("format_sig6 renders six significant digits in the C locale") {
    CHECK(format_sig6(0.0) == "0");
    CHECK(format_sig6(1.0) == "1");
    CHECK(format_sig6(-45.0) == "-45");
    CHECK(format_sig6(-0.5) == "-0.5");
    CHECK(format_sig6(5.403176438901539) == "5.40318");
    CHECK(format_sig6(0.20718403769712346) == "0.207184");
    CHECK(format_sig6(139.43965419496584) == "139.44");
    CHECK(format_sig6(1.39023e-06) == "1.39023e-06");
    CHECK(format_sig6(100000.0) == "100000");
    CHECK(format_sig6(1000000.0) == "1e+06");
    CHECK(format_sig6(1234567.0) == "1.23457e+06");
    CHECK(format_sig6(0.0001) == "0.0001");
}

TEST_CASE("artifact metadata block echoes version, hash, seed, and defaults") {
    std::ostringstream os;
    const std::vector<SweepRow> rows = {{0.0, 40.0, 0.5}};
    write_sweep_csv(os, rows, plain_meta());
    CHECK(os.str() ==
          "# hapslink 0.1.0\n"
          "# scenario_hash deadbeef01234567\n"
          "# seed 42\n"
          "# simulator_defaults k_db_list,seed\n"
          "k_db,tx_dbm,avg_outage\n"
          "0,40,0.5\n");

    // Timestamp line appears only when one is present.
    RunMetadata stamped = plain_meta();
    stamped.timestamp = "2026-01-01T00:00:00Z";
    stamped.simulator_defaults.clear();
    std::ostringstream os2;
    write_sweep_csv(os2, rows, stamped);
    CHECK(os2.str() ==
          "# hapslink 0.1.0\n"
          "# scenario_hash deadbeef01234567\n"
          "# seed 42\n"
          "# timestamp 2026-01-01T00:00:00Z\n"
          "# simulator_defaults (none)\n"
          "k_db,tx_dbm,avg_outage\n"
          "0,40,0.5\n");
}

TEST_CASE("make_run_metadata copies scenario provenance") {
    EnvVarGuard guard("SOURCE_DATE_EPOCH");
    ::unsetenv("SOURCE_DATE_EPOCH");
    const Scenario s = table1_default();
    const RunMetadata m = make_run_metadata(s);
    CHECK(m.tool_version == kVersion);
    CHECK(m.scenario_hash == "c8a5715d8d1f9854");
    CHECK(m.seed == 12345);
    CHECK(m.simulator_defaults == s.defaults_used);
    CHECK(m.timestamp.empty());
}

TEST_CASE("timestamps come from SOURCE_DATE_EPOCH first, the clock on request") {
    EnvVarGuard guard("SOURCE_DATE_EPOCH");
    const Scenario s = table1_default();

    ::setenv("SOURCE_DATE_EPOCH", "0", 1);
    CHECK(make_run_metadata(s, false).timestamp == "1970-01-01T00:00:00Z");
    // The pinned epoch wins even when a wall-clock stamp is requested.
    CHECK(make_run_metadata(s, true).timestamp == "1970-01-01T00:00:00Z");

    ::setenv("SOURCE_DATE_EPOCH", "86461", 1);
    CHECK(make_run_metadata(s, false).timestamp == "1970-01-02T00:01:01Z");

    // A malformed value cannot silently fall back to the wall clock.
    ::setenv("SOURCE_DATE_EPOCH", "not-a-number", 1);
    CHECK(make_run_metadata(s, true).timestamp.empty());

    ::unsetenv("SOURCE_DATE_EPOCH");
    CHECK(make_run_metadata(s, false).timestamp.empty());
    const std::string now = make_run_metadata(s, true).timestamp;
    REQUIRE(now.size() == 20);  // YYYY-MM-DDTHH:MM:SSZ
    CHECK(now.back() == 'Z');
    CHECK(now[4] == '-');
    CHECK(now[10] == 'T');
}

TEST_CASE("coverage CSV bytes are exact for a hand-built grid") {
    std::ostringstream os;
    write_coverage_csv(os, tiny_grid(), plain_meta());
    const std::string expected =
        "# hapslink 0.1.0\n"
        "# scenario_hash deadbeef01234567\n"
        "# seed 42\n"
        "# simulator_defaults k_db_list,seed\n"
        "x_m,y_m,z_m,gain_dbi,mean_snr_db,outage\n"
        "5,5,5,1.5,10.25,0.5\n"
        "15,5,5,1.5,10.25,0.25\n"
        "5,5,15,-2,3,1\n"
        "15,5,15,-2,3,0\n";
    CHECK(os.str() == expected);
}

TEST_CASE("cross-section CSV bytes are exact") {
    std::ostringstream os;
    const std::vector<GainSample> samples = {{Point3(-45.0, 0.0, 5.0), 0.0},
                                             {Point3(45.0, 0.0, 95.0), 27.378795964}};
    write_cross_section_csv(os, samples, plain_meta());
    CHECK(os.str() ==
          "# hapslink 0.1.0\n"
          "# scenario_hash deadbeef01234567\n"
          "# seed 42\n"
          "# simulator_defaults k_db_list,seed\n"
          "x_m,y_m,z_m,gain_dbi\n"
          "-45,0,5,0\n"
          "45,0,95,27.3788\n");
}

TEST_CASE("fleet CSV bytes are exact and keep ids as integers") {
    ConnectivityTrace trace;
    trace.dt_s = 1.0;
    trace.end_reason = TraceEnd::Completed;
    trace.records = {
        {1.0, 0, Point3(20.0, 0.0, 5.0), 0, 34.429755632309536, 0.0001234565},
        {1.0, 1, Point3(10.0, 0.0, 5.0), 2, -3.25, 1.0},
    };
    std::ostringstream os;
    write_fleet_csv(os, trace, plain_meta());
    CHECK(os.str() ==
          "# hapslink 0.1.0\n"
          "# scenario_hash deadbeef01234567\n"
          "# seed 42\n"
          "# simulator_defaults k_db_list,seed\n"
          "t_s,vehicle_id,x_m,y_m,z_m,serving_id,mean_snr_db,outage\n"
          "1,0,20,0,5,0,34.4298,0.000123457\n"
          "1,1,10,0,5,2,-3.25,1\n");
}

TEST_CASE("heatmap maps outage to brightness with rounding half away from zero") {
    const OutageGrid g = tiny_grid();
    const std::string meta =
        "# hapslink 0.1.0\n"
        "# scenario_hash deadbeef01234567\n"
        "# seed 42\n"
        "# simulator_defaults k_db_list,seed\n";

    // Ground plane (z index 0): columns x, rows y. 255 * 0.5 rounds up to 128.
    CHECK(render_heatmap(g, {2, 0}, plain_meta()) ==
          "P2\n" + meta + "2 1\n255\n128 191\n");
    // Upper plane: full outage -> black, zero outage -> white.
    CHECK(render_heatmap(g, {2, 1}, plain_meta()) == "P2\n" + meta + "2 1\n255\n0 255\n");
    // Side view (x fixed): columns y, rows z ascending.
    CHECK(render_heatmap(g, {0, 0}, plain_meta()) == "P2\n" + meta + "1 2\n255\n128\n0\n");
    CHECK(render_heatmap(g, {0, 1}, plain_meta()) == "P2\n" + meta + "1 2\n255\n191\n255\n");
    // Elevation view (y fixed): columns x, rows z.
    CHECK(render_heatmap(g, {1, 0}, plain_meta()) ==
          "P2\n" + meta + "2 2\n255\n128 191\n0 255\n");
}

TEST_CASE("heatmap validates the plane selection and grid shape") {
    const OutageGrid g = tiny_grid();
    CHECK_THROWS_AS(render_heatmap(g, {3, 0}, plain_meta()), InvalidInputError);
    CHECK_THROWS_AS(render_heatmap(g, {-1, 0}, plain_meta()), InvalidInputError);
    CHECK_THROWS_AS(render_heatmap(g, {2, 2}, plain_meta()), InvalidInputError);
    CHECK_THROWS_AS(render_heatmap(g, {2, -1}, plain_meta()), InvalidInputError);
    CHECK_THROWS_AS(render_heatmap(g, {1, 1}, plain_meta()), InvalidInputError);

    OutageGrid short_grid = g;
    short_grid.records.pop_back();
    CHECK_THROWS_AS(render_heatmap(short_grid, {2, 0}, plain_meta()), InvalidInputError);
}
