#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <string>
#include <vector>

namespace hapslink {

// Flat-Earth local frame: x east, y north, z altitude, all meters.
using Point3 = Eigen::Vector3d;
using Vec3 = Eigen::Vector3d;

// One altitude band of the corridor with its regulated speed.
struct Lane {
    double z_low_m = 0.0;
    double z_high_m = 0.0;
    double speed_limit_mps = 0.0;
};

// Axis-aligned voxelized aerial highway. `origin` is the minimum-coordinate
// corner; each extent must be an integer multiple of its step so the grid
// tiles the box exactly.
struct Highway3D {
    static constexpr double kDefaultCeilingM = 121.0;  // 400 ft small-UAS cap

    Point3 origin = Point3::Zero();
    Vec3 extent_m = Vec3::Zero();
    Vec3 step_m = Vec3::Zero();
    double ceiling_m = kDefaultCeilingM;
    std::vector<Lane> lanes;
};

bool operator==(const Lane& a, const Lane& b);
bool operator==(const Highway3D& a, const Highway3D& b);

// Structural checks; an empty result means the highway is usable.
std::vector<std::string> validate_highway(const Highway3D& hw);

// Throws ConfigError carrying all violations.
void require_valid(const Highway3D& hw);

// Voxels per axis. Throws ConfigError if the highway is invalid.
Eigen::Vector3i voxel_counts(const Highway3D& hw);

// Centers in x-fastest order: index = ix + nx * (iy + ny * iz).
std::vector<Point3> voxel_centers(const Highway3D& hw);

// Closed-box membership test (faces count as inside).
bool contains(const Highway3D& hw, const Point3& p);

// Euclidean distance. Throws InvalidInputError on non-finite coordinates.
double slant_range(const Point3& a, const Point3& b);

// Unit vector from `antenna` toward `aim`. Throws DegenerateGeometryError
// when the points coincide.
Vec3 boresight_from_aimpoint(const Point3& antenna, const Point3& aim);

// Angle in degrees, range [0, 180], between `boresight` (must be unit-norm)
// and the direction from `antenna` to `target`.
double off_axis_angle_deg(const Point3& antenna, const Vec3& boresight, const Point3& target);

}  // namespace hapslink
