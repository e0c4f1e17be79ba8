#include "hapslink/geometry.hpp"

#include <cmath>

#include "hapslink/error.hpp"
#include "hapslink/units.hpp"

namespace hapslink {

namespace {

// Relative slack for the integer-tiling check; steps written with six
// significant digits must still divide their extent cleanly.
constexpr double kCountTol = 1e-9;

bool integer_count(double extent, double step, int& count_out) {
    const double n = extent / step;
    const double rn = std::round(n);
    count_out = static_cast<int>(rn);
    return rn >= 1.0 && std::abs(n - rn) <= kCountTol * std::max(1.0, n);
}

}  // namespace

bool operator==(const Lane& a, const Lane& b) {
    return a.z_low_m == b.z_low_m && a.z_high_m == b.z_high_m &&
           a.speed_limit_mps == b.speed_limit_mps;
}

bool operator==(const Highway3D& a, const Highway3D& b) {
    return a.origin == b.origin && a.extent_m == b.extent_m && a.step_m == b.step_m &&
           a.ceiling_m == b.ceiling_m && a.lanes == b.lanes;
}

std::vector<std::string> validate_highway(const Highway3D& hw) {
    std::vector<std::string> out;
    static const char* axis[3] = {"x", "y", "z"};

    if (!hw.origin.allFinite()) out.push_back("highway origin must be finite");
    if (hw.origin.allFinite() && hw.origin.z() < 0.0)
        out.push_back("highway origin altitude must be >= 0 m");

    for (int i = 0; i < 3; ++i) {
        if (!std::isfinite(hw.extent_m[i]) || hw.extent_m[i] <= 0.0)
            out.push_back(std::string("highway extent ") + axis[i] + " must be > 0 m");
        if (!std::isfinite(hw.step_m[i]) || hw.step_m[i] <= 0.0)
            out.push_back(std::string("highway step ") + axis[i] + " must be > 0 m");
    }
    if (out.empty()) {
        for (int i = 0; i < 3; ++i) {
            int n = 0;
            if (!integer_count(hw.extent_m[i], hw.step_m[i], n))
                out.push_back(std::string("highway extent ") + axis[i] +
                              " must be an integer multiple of its step");
        }
    }

    if (!std::isfinite(hw.ceiling_m) || hw.ceiling_m <= 0.0) {
        out.push_back("highway ceiling must be > 0 m");
    } else if (hw.origin.allFinite() && std::isfinite(hw.extent_m.z()) &&
               hw.origin.z() + hw.extent_m.z() > hw.ceiling_m * (1.0 + kCountTol)) {
        out.push_back("highway top must not exceed the ceiling");
    }

    const double z_lo = hw.origin.z();
    const double z_hi = hw.origin.z() + hw.extent_m.z();
    for (std::size_t li = 0; li < hw.lanes.size(); ++li) {
        const Lane& lane = hw.lanes[li];
        const std::string tag = "lane " + std::to_string(li);
        if (!std::isfinite(lane.z_low_m) || !std::isfinite(lane.z_high_m) ||
            lane.z_low_m >= lane.z_high_m) {
            out.push_back(tag + " band must satisfy z_low < z_high");
            continue;
        }
        if (hw.origin.allFinite() &&
            (lane.z_low_m < z_lo - kCountTol || lane.z_high_m > z_hi + kCountTol))
            out.push_back(tag + " band must lie inside the highway altitude span");
        if (!std::isfinite(lane.speed_limit_mps) || lane.speed_limit_mps <= 0.0)
            out.push_back(tag + " speed limit must be > 0 m/s");
    }

    return out;
}

void require_valid(const Highway3D& hw) {
    auto v = validate_highway(hw);
    if (!v.empty()) throw ConfigError(v);
}

Eigen::Vector3i voxel_counts(const Highway3D& hw) {
    require_valid(hw);
    Eigen::Vector3i n;
    for (int i = 0; i < 3; ++i) {
        int c = 0;
        integer_count(hw.extent_m[i], hw.step_m[i], c);
        n[i] = c;
    }
    return n;
}

std::vector<Point3> voxel_centers(const Highway3D& hw) {
    const Eigen::Vector3i n = voxel_counts(hw);
    std::vector<Point3> centers;
    centers.reserve(static_cast<std::size_t>(n.x()) * n.y() * n.z());
    for (int iz = 0; iz < n.z(); ++iz)
        for (int iy = 0; iy < n.y(); ++iy)
            for (int ix = 0; ix < n.x(); ++ix)
                centers.push_back(hw.origin +
                                  Vec3((ix + 0.5) * hw.step_m.x(), (iy + 0.5) * hw.step_m.y(),
                                       (iz + 0.5) * hw.step_m.z()));
    return centers;
}

bool contains(const Highway3D& hw, const Point3& p) {
    if (!p.allFinite()) throw InvalidInputError("point must be finite");
    return (p.array() >= hw.origin.array()).all() &&
           (p.array() <= (hw.origin + hw.extent_m).array()).all();
}

double slant_range(const Point3& a, const Point3& b) {
    if (!a.allFinite() || !b.allFinite())
        throw InvalidInputError("slant_range: coordinates must be finite");
    return (b - a).norm();
}

Vec3 boresight_from_aimpoint(const Point3& antenna, const Point3& aim) {
    if (!antenna.allFinite() || !aim.allFinite())
        throw InvalidInputError("boresight_from_aimpoint: coordinates must be finite");
    const Vec3 d = aim - antenna;
    const double n = d.norm();
    if (n == 0.0)
        throw DegenerateGeometryError("boresight_from_aimpoint: aim point coincides with antenna");
    return d / n;
}

double off_axis_angle_deg(const Point3& antenna, const Vec3& boresight, const Point3& target) {
    if (!antenna.allFinite() || !boresight.allFinite() || !target.allFinite())
        throw InvalidInputError("off_axis_angle_deg: coordinates must be finite");
    if (std::abs(boresight.norm() - 1.0) > 1e-9)
        throw InvalidInputError("off_axis_angle_deg: boresight must be unit-norm");
    const Vec3 d = target - antenna;
    if (d.norm() == 0.0)
        throw DegenerateGeometryError("off_axis_angle_deg: target coincides with antenna");
    // atan2 of (|cross|, dot) is stable for angles near 0 and near 180.
    return rad_to_deg(std::atan2(boresight.cross(d).norm(), boresight.dot(d)));
}

}  // namespace hapslink
