#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "hapslink/coverage.hpp"
#include "hapslink/fleet.hpp"
#include "hapslink/scenario.hpp"

namespace hapslink {

// Provenance block echoed at the top of every artifact as '#' comments.
struct RunMetadata {
    std::string tool_version;
    std::string scenario_hash;
    std::uint64_t seed = 0;
    std::string timestamp;  // empty = omitted from artifacts
    std::vector<std::string> simulator_defaults;
};

// The timestamp comes from SOURCE_DATE_EPOCH when that is set, from the wall
// clock when `stamp` is true, and stays empty otherwise, so default artifact
// bytes depend only on (scenario, seed).
RunMetadata make_run_metadata(const Scenario& s, bool stamp = false);

// Six significant digits in the C locale (printf "%.6g" semantics).
std::string format_sig6(double v);

// CSV artifacts: '#' metadata block, header row, then '\n'-terminated rows
// with floats in format_sig6 form.
void write_coverage_csv(std::ostream& os, const OutageGrid& grid, const RunMetadata& meta);
void write_sweep_csv(std::ostream& os, std::span<const SweepRow> rows, const RunMetadata& meta);
void write_cross_section_csv(std::ostream& os, std::span<const GainSample> samples,
                             const RunMetadata& meta);
void write_fleet_csv(std::ostream& os, const ConnectivityTrace& trace, const RunMetadata& meta);

// Grid slice: axis 0/1/2 = x/y/z, index counts voxels along that axis.
struct PlaneSel {
    int axis = 2;
    int index = 0;
};

// ASCII PGM (P2) of one plane; pixel = round(255 * (1 - outage)), so bright
// means connected. Columns follow the first remaining axis in x,y,z order,
// rows the second, both ascending.
std::string render_heatmap(const OutageGrid& grid, PlaneSel plane, const RunMetadata& meta);

}  // namespace hapslink
