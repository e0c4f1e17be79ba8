#include <doctest.h>

#include <cmath>
#include <random>

#include "hapslink/error.hpp"
#include "hapslink/geometry.hpp"

using namespace hapslink;

namespace {

Highway3D baseline_highway() {
    Highway3D hw;
    hw.origin = Point3(-50.0, -5.0, 0.0);
    hw.extent_m = Vec3(100.0, 10.0, 100.0);
    hw.step_m = Vec3(10.0, 10.0, 10.0);
    hw.lanes = {{0.0, 100.0, 10.0}};
    return hw;
}

}  // namespace

TEST_CASE("slant_range matches hand-computed hypotenuse") {
    // sqrt(10000^2 + 500^2 + 20000^2) = sqrt(500250000)
    const double d = slant_range(Point3(0, 0, 20000), Point3(10000, 500, 0));
    CHECK(d == doctest::Approx(22366.26924634504).epsilon(1e-12));
    CHECK(slant_range(Point3(1, 2, 3), Point3(1, 2, 3)) == 0.0);
    CHECK(slant_range(Point3(0, 0, 0), Point3(3, 4, 0)) == doctest::Approx(5.0));
}

TEST_CASE("slant_range is symmetric and rejects non-finite input") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1e4, 1e4);
    for (int i = 0; i < 50; ++i) {
        const Point3 a(u(rng), u(rng), u(rng));
        const Point3 b(u(rng), u(rng), u(rng));
        CHECK(slant_range(a, b) == slant_range(b, a));
    }
    CHECK_THROWS_AS(slant_range(Point3(0, 0, std::nan("")), Point3::Zero()),
                    InvalidInputError);
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(slant_range(Point3::Zero(), Point3(inf, 0, 0)), InvalidInputError);
}

TEST_CASE("boresight_from_aimpoint is unit-norm toward the aim point") {
    const Point3 haps(0, 0, 20000);
    const Point3 aim(10000, 500, 0);
    const Vec3 bs = boresight_from_aimpoint(haps, aim);
    CHECK(bs.norm() == doctest::Approx(1.0).epsilon(1e-15));
    // Collinear with aim - haps.
    CHECK(bs.cross(aim - haps).norm() == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(bs.z() < 0.0);
    CHECK_THROWS_AS(boresight_from_aimpoint(haps, haps), DegenerateGeometryError);
}

TEST_CASE("off_axis_angle_deg reproduces the nadir-target angle") {
    // Boresight toward (10000, 500, 0) from 20 km; target straight down.
    // Oracle: acos(20000 / sqrt(500250000)) = 26.593674 deg.
    const Point3 haps(0, 0, 20000);
    const Vec3 bs = boresight_from_aimpoint(haps, Point3(10000, 500, 0));
    const double theta = off_axis_angle_deg(haps, bs, Point3(0, 0, 0));
    CHECK(theta == doctest::Approx(26.593674030621372).epsilon(1e-10));
    // Along the boresight the angle vanishes; opposite direction gives 180.
    CHECK(off_axis_angle_deg(haps, bs, Point3(10000, 500, 0)) ==
          doctest::Approx(0.0).epsilon(1e-9));
    const Point3 behind = haps - (Point3(10000, 500, 0) - haps);
    CHECK(off_axis_angle_deg(haps, bs, behind) == doctest::Approx(180.0).epsilon(1e-9));
}

TEST_CASE("off_axis_angle_deg validates boresight norm and degenerate target") {
    const Point3 o = Point3::Zero();
    CHECK_THROWS_AS(off_axis_angle_deg(o, Vec3(0, 0, 2), Point3(1, 0, 0)),
                    InvalidInputError);
    CHECK_THROWS_AS(off_axis_angle_deg(o, Vec3(0, 0, 1), o), DegenerateGeometryError);
    // Right angle sanity.
    CHECK(off_axis_angle_deg(o, Vec3(0, 0, 1), Point3(5, 0, 0)) ==
          doctest::Approx(90.0).epsilon(1e-12));
}

TEST_CASE("voxel_counts and voxel_centers tile the baseline corridor") {
    const Highway3D hw = baseline_highway();
    const Eigen::Vector3i n = voxel_counts(hw);
    CHECK(n.x() == 10);
    CHECK(n.y() == 1);
    CHECK(n.z() == 10);
    const auto centers = voxel_centers(hw);
    REQUIRE(centers.size() == 100);
    // x-fastest order: first voxel, then its +x neighbor.
    CHECK(centers[0] == Point3(-45.0, 0.0, 5.0));
    CHECK(centers[1] == Point3(-35.0, 0.0, 5.0));
    // index = ix + nx * (iy + ny * iz)
    CHECK(centers[10] == Point3(-45.0, 0.0, 15.0));
    CHECK(centers.back() == Point3(45.0, 0.0, 95.0));
    for (const Point3& c : centers) CHECK(contains(hw, c));
}

TEST_CASE("voxel grid handles fractional steps that still tile evenly") {
    Highway3D hw = baseline_highway();
    hw.extent_m = Vec3(1.0, 1.0, 100.0);
    hw.step_m = Vec3(0.1, 0.5, 20.0);
    hw.lanes.clear();
    const Eigen::Vector3i n = voxel_counts(hw);
    CHECK(n.x() == 10);
    CHECK(n.y() == 2);
    CHECK(n.z() == 5);
    CHECK(voxel_centers(hw).size() == 100);
}

TEST_CASE("validate_highway reports every violation at once") {
    Highway3D hw;
    hw.origin = Point3(0, 0, -1);
    hw.extent_m = Vec3(100, 0, 100);   // zero y extent
    hw.step_m = Vec3(10, 10, 10);
    const auto v = validate_highway(hw);
    CHECK(v.size() >= 2);
    CHECK_THROWS_AS(require_valid(hw), ConfigError);
}

TEST_CASE("validate_highway rejects non-integer tiling and too-high boxes") {
    Highway3D hw = baseline_highway();
    hw.step_m = Vec3(30.0, 10.0, 10.0);  // 100/30 is not an integer
    CHECK(!validate_highway(hw).empty());

    Highway3D tall = baseline_highway();
    tall.extent_m.z() = 150.0;
    tall.step_m.z() = 15.0;
    tall.lanes.clear();
    // 150 m of airspace above a 121 m ceiling.
    CHECK(!validate_highway(tall).empty());
    tall.ceiling_m = 200.0;
    CHECK(validate_highway(tall).empty());
}

TEST_CASE("validate_highway checks lane bands") {
    Highway3D hw = baseline_highway();
    hw.lanes = {{40.0, 20.0, 10.0}};  // inverted band
    CHECK(!validate_highway(hw).empty());
    hw.lanes = {{0.0, 130.0, 10.0}};  // above the box
    CHECK(!validate_highway(hw).empty());
    hw.lanes = {{0.0, 100.0, 0.0}};  // zero speed
    CHECK(!validate_highway(hw).empty());
    hw.lanes = {{0.0, 50.0, 10.0}, {50.0, 100.0, 15.0}};
    CHECK(validate_highway(hw).empty());
}

TEST_CASE("contains treats faces as inside") {
    const Highway3D hw = baseline_highway();
    CHECK(contains(hw, Point3(-50, -5, 0)));
    CHECK(contains(hw, Point3(50, 5, 100)));
    CHECK(!contains(hw, Point3(50.001, 0, 50)));
    CHECK(!contains(hw, Point3(0, 0, -0.001)));
}
