#include "hapslink/scenario.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <initializer_list>

#include "hapslink/error.hpp"

namespace hapslink {

using nlohmann::json;

namespace {

// Terrestrial defaults are an idealized baseline: sectors never spill energy
// upward beyond the quadratic main lobe (deep side-lobe floor), so the
// comparison against the stratospheric node is not dominated by an arbitrary
// back-lobe constant.
const AntennaPattern kHapsPatternDefault{30.0, 5.0, PatternVariant::QuadraticFloor, 30.0};
const AntennaPattern kTerrestrialPatternDefault{30.0, 10.0, PatternVariant::QuadraticFloor,
                                                100.0};

struct Ctx {
    std::vector<std::string> violations;
    std::vector<std::string> warnings;
    std::vector<std::string> defaults;
};

const json* child(const json& o, const char* key) {
    if (!o.is_object()) return nullptr;
    const auto it = o.find(key);
    return it == o.end() ? nullptr : &*it;
}

void check_unknown(const json& o, std::initializer_list<const char*> known,
                   const std::string& path, Ctx& ctx) {
    if (!o.is_object()) return;
    for (const auto& [key, value] : o.items()) {
        bool ok = false;
        for (const char* k : known)
            if (key == k) {
                ok = true;
                break;
            }
        if (!ok)
            ctx.warnings.push_back("unknown key: " + (path.empty() ? key : path + "." + key));
    }
}

double to_num(const json& v, const std::string& path, Ctx& ctx, double fallback) {
    if (v.is_number()) return v.get<double>();
    ctx.violations.push_back(path + ": must be a number");
    return fallback;
}

double num_req(const json& o, const char* key, const std::string& path, Ctx& ctx,
               double fallback) {
    const json* v = child(o, key);
    if (!v) {
        ctx.violations.push_back(path + "." + key + ": required key is missing");
        return fallback;
    }
    return to_num(*v, path + "." + key, ctx, fallback);
}

// Optional key; when absent returns `def` and, if `flag`, records the path
// as a simulator default.
double num_opt(const json& o, const char* key, const std::string& path, Ctx& ctx, double def,
               bool flag) {
    const json* v = child(o, key);
    if (!v) {
        if (flag) ctx.defaults.push_back(path + "." + key);
        return def;
    }
    return to_num(*v, path + "." + key, ctx, def);
}

Point3 to_vec3(const json& v, const std::string& path, Ctx& ctx, const Point3& fallback) {
    if (!v.is_array() || v.size() != 3) {
        ctx.violations.push_back(path + ": must be an array of 3 numbers");
        return fallback;
    }
    Point3 out;
    for (int i = 0; i < 3; ++i) out[i] = to_num(v[static_cast<std::size_t>(i)],
                                                path + "[" + std::to_string(i) + "]", ctx, 0.0);
    return out;
}

Point3 vec3_req(const json& o, const char* key, const std::string& path, Ctx& ctx,
                const Point3& fallback) {
    const json* v = child(o, key);
    if (!v) {
        ctx.violations.push_back(path + "." + key + ": required key is missing");
        return fallback;
    }
    return to_vec3(*v, path + "." + key, ctx, fallback);
}

RadioConfig parse_haps_radio(const json& haps, Ctx& ctx) {
    RadioConfig r;
    const std::string p = "haps.radio";
    const json* o = child(haps, "radio");
    if (!o) {
        ctx.violations.push_back(p + ": required key is missing");
        return r;
    }
    if (!o->is_object()) {
        ctx.violations.push_back(p + ": must be an object");
        return r;
    }
    check_unknown(*o,
                  {"carrier_ghz", "bandwidth_mhz", "temperature_c", "tx_power_dbm",
                   "rx_gain_dbi", "noise_figure_db"},
                  p, ctx);
    r.carrier_hz = num_req(*o, "carrier_ghz", p, ctx, 10.0) * 1e9;
    r.bandwidth_hz = num_req(*o, "bandwidth_mhz", p, ctx, 10.0) * 1e6;
    r.temperature_k = num_req(*o, "temperature_c", p, ctx, 24.0) + 273.15;
    r.tx_power_dbm = num_opt(*o, "tx_power_dbm", p, ctx, 40.0, true);
    r.rx_gain_dbi = num_opt(*o, "rx_gain_dbi", p, ctx, 0.0, true);
    r.noise_figure_db = num_opt(*o, "noise_figure_db", p, ctx, 0.0, true);
    return r;
}

// Terrestrial radios inherit from the platform radio; present keys override
// without per-key provenance flags (the inherited values are already
// disclosed through the haps entries).
RadioConfig parse_terr_radio(const json& node, const std::string& path, Ctx& ctx,
                             const RadioConfig& inherit) {
    RadioConfig r = inherit;
    const json* o = child(node, "radio");
    const std::string p = path + ".radio";
    if (!o) {
        ctx.defaults.push_back(p);
        return r;
    }
    if (!o->is_object()) {
        ctx.violations.push_back(p + ": must be an object");
        return r;
    }
    check_unknown(*o,
                  {"carrier_ghz", "bandwidth_mhz", "temperature_c", "tx_power_dbm",
                   "rx_gain_dbi", "noise_figure_db"},
                  p, ctx);
    if (const json* v = child(*o, "carrier_ghz")) r.carrier_hz = to_num(*v, p + ".carrier_ghz", ctx, 10.0) * 1e9;
    if (const json* v = child(*o, "bandwidth_mhz")) r.bandwidth_hz = to_num(*v, p + ".bandwidth_mhz", ctx, 10.0) * 1e6;
    if (const json* v = child(*o, "temperature_c")) r.temperature_k = to_num(*v, p + ".temperature_c", ctx, 24.0) + 273.15;
    if (const json* v = child(*o, "tx_power_dbm")) r.tx_power_dbm = to_num(*v, p + ".tx_power_dbm", ctx, 40.0);
    if (const json* v = child(*o, "rx_gain_dbi")) r.rx_gain_dbi = to_num(*v, p + ".rx_gain_dbi", ctx, 0.0);
    if (const json* v = child(*o, "noise_figure_db")) r.noise_figure_db = to_num(*v, p + ".noise_figure_db", ctx, 0.0);
    return r;
}

AntennaPattern parse_pattern(const json& parent, const std::string& parent_path, Ctx& ctx,
                             const AntennaPattern& defaults) {
    AntennaPattern pat = defaults;
    const std::string p = parent_path + ".pattern";
    const json* o = child(parent, "pattern");
    if (!o) {
        ctx.defaults.push_back(p);
        return pat;
    }
    if (!o->is_object()) {
        ctx.violations.push_back(p + ": must be an object");
        return pat;
    }
    check_unknown(*o, {"g0_dbi", "theta3_deg", "variant", "floor_rel_db"}, p, ctx);
    pat.boresight_gain_dbi = num_opt(*o, "g0_dbi", p, ctx, defaults.boresight_gain_dbi, true);
    pat.beamwidth3db_deg = num_opt(*o, "theta3_deg", p, ctx, defaults.beamwidth3db_deg, true);
    pat.floor_rel_db = num_opt(*o, "floor_rel_db", p, ctx, defaults.floor_rel_db, true);
    if (const json* v = child(*o, "variant")) {
        if (!v->is_string()) {
            ctx.violations.push_back(p + ".variant: must be a string");
        } else if (auto pv = pattern_variant_from_string(v->get<std::string>())) {
            pat.variant = *pv;
        } else {
            ctx.violations.push_back(p +
                                     ".variant: must be \"quadratic-floor\" or \"itu-f1336-peak\"");
        }
    } else {
        ctx.defaults.push_back(p + ".variant");
    }
    return pat;
}

Highway3D parse_highway(const json& root, const Point3& haps_pos, Ctx& ctx) {
    Highway3D hw;
    const json* o = child(root, "highway");
    const std::string p = "highway";
    if (!o) {
        ctx.violations.push_back(p + ": required key is missing");
        return hw;
    }
    if (!o->is_object()) {
        ctx.violations.push_back(p + ": must be an object");
        return hw;
    }
    check_unknown(*o, {"origin_m", "extent_m", "step_m", "ceiling_m", "lanes"}, p, ctx);
    hw.extent_m = vec3_req(*o, "extent_m", p, ctx, Vec3(100.0, 10.0, 100.0));
    hw.step_m = vec3_req(*o, "step_m", p, ctx, Vec3(10.0, 10.0, 10.0));
    hw.ceiling_m = num_opt(*o, "ceiling_m", p, ctx, Highway3D::kDefaultCeilingM, false);
    if (const json* v = child(*o, "origin_m")) {
        hw.origin = to_vec3(*v, p + ".origin_m", ctx, Point3::Zero());
    } else {
        // Corridor centered under the platform, floor at ground level.
        hw.origin = Point3(haps_pos.x() - 0.5 * hw.extent_m.x(),
                           haps_pos.y() - 0.5 * hw.extent_m.y(), 0.0);
        ctx.defaults.push_back(p + ".origin_m");
    }
    if (const json* v = child(*o, "lanes")) {
        if (!v->is_array() || v->empty()) {
            ctx.violations.push_back(p + ".lanes: must be a non-empty array");
        } else {
            for (std::size_t i = 0; i < v->size(); ++i) {
                const json& lo = (*v)[i];
                const std::string lp = p + ".lanes[" + std::to_string(i) + "]";
                Lane lane;
                if (!lo.is_object()) {
                    ctx.violations.push_back(lp + ": must be an object");
                    continue;
                }
                check_unknown(lo, {"z_band_m", "speed_limit_mps"}, lp, ctx);
                const json* zb = child(lo, "z_band_m");
                if (!zb || !zb->is_array() || zb->size() != 2) {
                    ctx.violations.push_back(lp + ".z_band_m: must be an array of 2 numbers");
                } else {
                    lane.z_low_m = to_num((*zb)[0], lp + ".z_band_m[0]", ctx, 0.0);
                    lane.z_high_m = to_num((*zb)[1], lp + ".z_band_m[1]", ctx, 0.0);
                }
                lane.speed_limit_mps = num_req(lo, "speed_limit_mps", lp, ctx, 10.0);
                hw.lanes.push_back(lane);
            }
        }
    } else {
        hw.lanes.push_back({hw.origin.z(), hw.origin.z() + hw.extent_m.z(), 10.0});
        ctx.defaults.push_back(p + ".lanes");
    }
    return hw;
}

VehicleState parse_vehicle(const json& o, const std::string& path, Ctx& ctx) {
    VehicleState v;
    if (!o.is_object()) {
        ctx.violations.push_back(path + ": must be an object");
        return v;
    }
    check_unknown(o, {"position_m", "speed_mps"}, path, ctx);
    v.position = vec3_req(o, "position_m", path, ctx, Point3::Zero());
    v.speed_mps = num_req(o, "speed_mps", path, ctx, 0.0);
    return v;
}

std::optional<FleetConfig> parse_fleet(const json& root, const Highway3D& hw, Ctx& ctx) {
    const json* o = child(root, "fleet");
    if (!o) return std::nullopt;
    const std::string p = "fleet";
    FleetConfig fc;
    if (!o->is_object()) {
        ctx.violations.push_back(p + ": must be an object");
        return fc;
    }
    check_unknown(*o,
                  {"leader", "followers", "lane", "target_spacing_m", "spacing_gain_per_s",
                   "dt_s", "duration_s"},
                  p, ctx);
    if (const json* v = child(*o, "leader")) {
        fc.platoon.leader = parse_vehicle(*v, p + ".leader", ctx);
    } else {
        ctx.violations.push_back(p + ".leader: required key is missing");
    }
    if (const json* v = child(*o, "followers")) {
        if (!v->is_array()) {
            ctx.violations.push_back(p + ".followers: must be an array");
        } else {
            for (std::size_t i = 0; i < v->size(); ++i)
                fc.platoon.followers.push_back(
                    parse_vehicle((*v)[i], p + ".followers[" + std::to_string(i) + "]", ctx));
        }
    }
    fc.platoon.lane_index = static_cast<int>(num_opt(*o, "lane", p, ctx, 0.0, false));
    fc.platoon.target_spacing_m = num_opt(*o, "target_spacing_m", p, ctx, 10.0, true);
    fc.platoon.spacing_gain_per_s = num_opt(*o, "spacing_gain_per_s", p, ctx, 0.5, true);
    fc.dt_s = num_opt(*o, "dt_s", p, ctx, 1.0, true);
    fc.duration_s = num_req(*o, "duration_s", p, ctx, 100.0);
    if (fc.platoon.lane_index >= 0 &&
        static_cast<std::size_t>(fc.platoon.lane_index) < hw.lanes.size()) {
        fc.platoon.speed_limit_mps =
            hw.lanes[static_cast<std::size_t>(fc.platoon.lane_index)].speed_limit_mps;
    } else {
        ctx.violations.push_back(p + ".lane: no such lane in highway.lanes");
    }
    return fc;
}

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

json vec3_json(const Point3& v) { return json::array({v.x(), v.y(), v.z()}); }

json radio_json(const RadioConfig& r) {
    json o;
    o["carrier_ghz"] = r.carrier_hz / 1e9;
    o["bandwidth_mhz"] = r.bandwidth_hz / 1e6;
    o["temperature_c"] = r.temperature_k - 273.15;
    o["tx_power_dbm"] = r.tx_power_dbm;
    o["rx_gain_dbi"] = r.rx_gain_dbi;
    o["noise_figure_db"] = r.noise_figure_db;
    return o;
}

json pattern_json(const AntennaPattern& p) {
    json o;
    o["g0_dbi"] = p.boresight_gain_dbi;
    o["theta3_deg"] = p.beamwidth3db_deg;
    o["variant"] = to_string(p.variant);
    o["floor_rel_db"] = p.floor_rel_db;
    return o;
}

json vehicle_json(const VehicleState& v) {
    json o;
    o["position_m"] = vec3_json(v.position);
    o["speed_mps"] = v.speed_mps;
    return o;
}

// Baseline scenario text; table1_default() and scenarios/table1.json must
// stay in sync with this.
constexpr const char* kBaselineJson = R"json({
  "haps": {
    "position_m": [0, 0, 20000],
    "aim_point_m": [10000, 500, 0],
    "radio": {"carrier_ghz": 10, "bandwidth_mhz": 10, "temperature_c": 24}
  },
  "highway": {
    "extent_m": [100, 10, 100],
    "step_m": [10, 10, 10]
  },
  "rate_bps_hz": 1
})json";

}  // namespace

bool operator==(const FleetConfig& a, const FleetConfig& b) {
    return a.platoon == b.platoon && a.dt_s == b.dt_s && a.duration_s == b.duration_s;
}

bool semantically_equal(const Scenario& a, const Scenario& b) {
    return a.haps == b.haps && a.terrestrial == b.terrestrial && a.highway == b.highway &&
           a.k_db_list == b.k_db_list && a.tx_dbm_list == b.tx_dbm_list &&
           a.rate_bps_hz == b.rate_bps_hz && a.seed == b.seed && a.fleet == b.fleet;
}

ValidationReport validate_scenario(const Scenario& s) {
    ValidationReport rep;
    auto take = [&rep](const std::vector<std::string>& v, const std::string& prefix) {
        for (const auto& m : v) rep.violations.push_back(prefix + m);
    };
    take(validate_node(s.haps), "");
    for (const auto& w : node_warnings(s.haps)) rep.warnings.push_back(w);
    for (std::size_t i = 0; i < s.terrestrial.size(); ++i)
        take(validate_node(s.terrestrial[i]), "terrestrial[" + std::to_string(i) + "]: ");
    take(validate_highway(s.highway), "");
    if (s.highway.ceiling_m > Highway3D::kDefaultCeilingM)
        rep.warnings.push_back("highway ceiling exceeds the 121 m (400 ft) small-UAS default");

    if (s.k_db_list.empty()) rep.violations.push_back("k_db_list must not be empty");
    for (double k : s.k_db_list)
        if (!std::isfinite(k)) {
            rep.violations.push_back("k_db_list entries must be finite");
            break;
        }
    if (s.tx_dbm_list.empty()) rep.violations.push_back("tx_dbm_list must not be empty");
    for (double tx : s.tx_dbm_list)
        if (!std::isfinite(tx)) {
            rep.violations.push_back("tx_dbm_list entries must be finite");
            break;
        }
    if (!std::isfinite(s.rate_bps_hz) || s.rate_bps_hz <= 0.0)
        rep.violations.push_back("rate_bps_hz must be > 0");

    if (s.fleet) {
        take(validate_platoon(s.fleet->platoon), "fleet: ");
        if (!std::isfinite(s.fleet->dt_s) || s.fleet->dt_s <= 0.0)
            rep.violations.push_back("fleet.dt_s must be > 0");
        else if (!std::isfinite(s.fleet->duration_s) || s.fleet->duration_s < s.fleet->dt_s)
            rep.violations.push_back("fleet.duration_s must be >= fleet.dt_s");
        const Platoon& p = s.fleet->platoon;
        if (p.lane_index < 0 ||
            static_cast<std::size_t>(p.lane_index) >= s.highway.lanes.size()) {
            rep.violations.push_back("fleet.lane must index an existing highway lane");
        } else if (validate_platoon(p).empty() && validate_highway(s.highway).empty()) {
            const Lane& lane = s.highway.lanes[static_cast<std::size_t>(p.lane_index)];
            auto in_lane = [&](const VehicleState& v) {
                return contains(s.highway, v.position) && v.position.z() >= lane.z_low_m &&
                       v.position.z() <= lane.z_high_m;
            };
            bool ok = in_lane(p.leader);
            for (const VehicleState& f : p.followers) ok = ok && in_lane(f);
            if (!ok)
                rep.violations.push_back(
                    "fleet vehicles must start inside the highway and their lane band");
            if (p.speed_limit_mps != lane.speed_limit_mps)
                rep.violations.push_back(
                    "fleet platoon speed limit must match its lane speed limit");
        }
    }
    return rep;
}

Scenario table1_default() { return parse_scenario(kBaselineJson); }

Scenario parse_scenario(std::string_view json_text, std::vector<std::string>* warnings) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        int line = 1, col = 1;
        const std::size_t upto =
            e.byte > 0 ? std::min(json_text.size(), static_cast<std::size_t>(e.byte) - 1)
                       : 0;
        for (std::size_t i = 0; i < upto; ++i) {
            if (json_text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(e.what(), line, col);
    }
    if (!root.is_object()) throw ConfigError("scenario root must be a JSON object");

    Ctx ctx;
    Scenario s;
    check_unknown(root,
                  {"haps", "terrestrial", "highway", "k_db_list", "tx_dbm_list", "rate_bps_hz",
                   "seed", "fleet"},
                  "", ctx);

    const json* ho = child(root, "haps");
    if (!ho) {
        ctx.violations.push_back("haps: required key is missing");
    } else if (!ho->is_object()) {
        ctx.violations.push_back("haps: must be an object");
    } else {
        check_unknown(*ho, {"position_m", "aim_point_m", "radio", "pattern"}, "haps", ctx);
        if (const json* v = child(*ho, "position_m"))
            s.haps.position = to_vec3(*v, "haps.position_m", ctx, s.haps.position);
        else
            ctx.violations.push_back("haps.position_m: required key is missing");
        if (const json* v = child(*ho, "aim_point_m"))
            s.haps.aim_point = to_vec3(*v, "haps.aim_point_m", ctx, s.haps.aim_point);
        else
            ctx.violations.push_back("haps.aim_point_m: required key is missing");
        s.haps.radio = parse_haps_radio(*ho, ctx);
        s.haps.pattern = parse_pattern(*ho, "haps", ctx, kHapsPatternDefault);
    }

    s.highway = parse_highway(root, s.haps.position, ctx);

    if (const json* to = child(root, "terrestrial")) {
        if (!to->is_array()) {
            ctx.violations.push_back("terrestrial: must be an array");
        } else {
            for (std::size_t i = 0; i < to->size(); ++i) {
                const json& no = (*to)[i];
                const std::string p = "terrestrial[" + std::to_string(i) + "]";
                TerrestrialBs bs;
                if (!no.is_object()) {
                    ctx.violations.push_back(p + ": must be an object");
                    continue;
                }
                check_unknown(no, {"position_m", "sectors", "radio", "pattern"}, p, ctx);
                bs.position = vec3_req(no, "position_m", p, ctx, bs.position);
                if (const json* v = child(no, "sectors")) {
                    if (!v->is_array() || v->empty()) {
                        ctx.violations.push_back(p + ".sectors: must be a non-empty array");
                    } else {
                        for (std::size_t si = 0; si < v->size(); ++si) {
                            const json& so = (*v)[si];
                            const std::string sp = p + ".sectors[" + std::to_string(si) + "]";
                            Sector sec;
                            if (!so.is_object()) {
                                ctx.violations.push_back(sp + ": must be an object");
                                continue;
                            }
                            check_unknown(so, {"azimuth_deg", "downtilt_deg"}, sp, ctx);
                            sec.azimuth_deg = num_req(so, "azimuth_deg", sp, ctx, 0.0);
                            sec.downtilt_deg = num_req(so, "downtilt_deg", sp, ctx, 0.0);
                            bs.sectors.push_back(sec);
                        }
                    }
                } else {
                    // Standard tri-sector site.
                    bs.sectors = {{0.0, 6.0}, {120.0, 6.0}, {240.0, 6.0}};
                    ctx.defaults.push_back(p + ".sectors");
                }
                bs.radio = parse_terr_radio(no, p, ctx, s.haps.radio);
                bs.pattern = parse_pattern(no, p, ctx, kTerrestrialPatternDefault);
                s.terrestrial.push_back(bs);
            }
        }
    }

    if (const json* v = child(root, "k_db_list")) {
        s.k_db_list.clear();
        if (!v->is_array()) {
            ctx.violations.push_back("k_db_list: must be an array of numbers");
        } else {
            for (std::size_t i = 0; i < v->size(); ++i)
                s.k_db_list.push_back(
                    to_num((*v)[i], "k_db_list[" + std::to_string(i) + "]", ctx, 0.0));
        }
    } else {
        ctx.defaults.push_back("k_db_list");
    }
    if (const json* v = child(root, "tx_dbm_list")) {
        s.tx_dbm_list.clear();
        if (!v->is_array()) {
            ctx.violations.push_back("tx_dbm_list: must be an array of numbers");
        } else {
            for (std::size_t i = 0; i < v->size(); ++i)
                s.tx_dbm_list.push_back(
                    to_num((*v)[i], "tx_dbm_list[" + std::to_string(i) + "]", ctx, 0.0));
        }
    } else {
        ctx.defaults.push_back("tx_dbm_list");
    }

    if (const json* v = child(root, "rate_bps_hz")) {
        s.rate_bps_hz = to_num(*v, "rate_bps_hz", ctx, 1.0);
    } else {
        ctx.violations.push_back("rate_bps_hz: required key is missing");
    }

    if (const json* v = child(root, "seed")) {
        if (v->is_number_unsigned()) {
            s.seed = v->get<std::uint64_t>();
        } else if (v->is_number_integer()) {
            ctx.violations.push_back("seed: must be a non-negative integer");
        } else {
            ctx.violations.push_back("seed: must be a non-negative integer");
        }
    } else {
        ctx.defaults.push_back("seed");
    }

    s.fleet = parse_fleet(root, s.highway, ctx);
    s.defaults_used = ctx.defaults;

    if (!ctx.violations.empty()) throw ConfigError(ctx.violations);

    ValidationReport rep = validate_scenario(s);
    for (const auto& w : rep.warnings) ctx.warnings.push_back(w);
    if (warnings) *warnings = ctx.warnings;
    if (!rep.ok()) throw ConfigError(rep.violations);
    return s;
}

std::string serialize_scenario(const Scenario& s) {
    json out;
    out["haps"]["position_m"] = vec3_json(s.haps.position);
    out["haps"]["aim_point_m"] = vec3_json(s.haps.aim_point);
    out["haps"]["radio"] = radio_json(s.haps.radio);
    out["haps"]["pattern"] = pattern_json(s.haps.pattern);

    out["highway"]["origin_m"] = vec3_json(s.highway.origin);
    out["highway"]["extent_m"] = vec3_json(s.highway.extent_m);
    out["highway"]["step_m"] = vec3_json(s.highway.step_m);
    out["highway"]["ceiling_m"] = s.highway.ceiling_m;
    json lanes = json::array();
    for (const Lane& l : s.highway.lanes) {
        json lo;
        lo["z_band_m"] = json::array({l.z_low_m, l.z_high_m});
        lo["speed_limit_mps"] = l.speed_limit_mps;
        lanes.push_back(lo);
    }
    out["highway"]["lanes"] = lanes;

    json terr = json::array();
    for (const TerrestrialBs& bs : s.terrestrial) {
        json o;
        o["position_m"] = vec3_json(bs.position);
        json secs = json::array();
        for (const Sector& sec : bs.sectors) {
            json so;
            so["azimuth_deg"] = sec.azimuth_deg;
            so["downtilt_deg"] = sec.downtilt_deg;
            secs.push_back(so);
        }
        o["sectors"] = secs;
        o["radio"] = radio_json(bs.radio);
        o["pattern"] = pattern_json(bs.pattern);
        terr.push_back(o);
    }
    out["terrestrial"] = terr;

    out["k_db_list"] = s.k_db_list;
    out["tx_dbm_list"] = s.tx_dbm_list;
    out["rate_bps_hz"] = s.rate_bps_hz;
    out["seed"] = s.seed;

    if (s.fleet) {
        json f;
        f["leader"] = vehicle_json(s.fleet->platoon.leader);
        json fol = json::array();
        for (const VehicleState& v : s.fleet->platoon.followers) fol.push_back(vehicle_json(v));
        f["followers"] = fol;
        f["lane"] = s.fleet->platoon.lane_index;
        f["target_spacing_m"] = s.fleet->platoon.target_spacing_m;
        f["spacing_gain_per_s"] = s.fleet->platoon.spacing_gain_per_s;
        f["dt_s"] = s.fleet->dt_s;
        f["duration_s"] = s.fleet->duration_s;
        out["fleet"] = f;
    }
    return out.dump(2) + "\n";
}

std::uint64_t scenario_hash(const Scenario& s) { return fnv1a64(serialize_scenario(s)); }

std::string scenario_hash_hex(const Scenario& s) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(scenario_hash(s)));
    return buf;
}

}  // namespace hapslink
