#include <doctest.h>

#include <cmath>
#include <random>

#include "hapslink/antenna.hpp"
#include "hapslink/error.hpp"

using namespace hapslink;

TEST_CASE("quadratic-floor gain: boresight, 3 dB point, and floor clamp") {
    AntennaPattern pat{30.0, 5.0, PatternVariant::QuadraticFloor, 30.0};
    CHECK(gain_dbi(pat, 0.0) == 30.0);
    // Quadratic main lobe: 12 dB down at theta3, 3 dB down at theta3/2.
    CHECK(gain_dbi(pat, 5.0) == doctest::Approx(18.0));
    CHECK(gain_dbi(pat, 2.5) == doctest::Approx(27.0));
    // Far off axis the floor g0 - floor_rel_db = 0 dBi wins.
    CHECK(gain_dbi(pat, 26.6) == doctest::Approx(0.0));
    CHECK(gain_dbi(pat, 180.0) == doctest::Approx(0.0));
    // Crossover where g0 - 12 (t/t3)^2 = g0 - 30: t = t3 sqrt(30/12).
    const double cross = 5.0 * std::sqrt(30.0 / 12.0);
    CHECK(gain_dbi(pat, cross) == doctest::Approx(0.0));
    CHECK(gain_dbi(pat, cross - 0.01) > 0.0);
}

TEST_CASE("itu-f1336-peak gain: branches meet at theta3 and roll off 15 dB/decade") {
    AntennaPattern pat{30.0, 5.0, PatternVariant::ItuF1336Peak, 30.0};
    CHECK(gain_dbi(pat, 0.0) == 30.0);
    CHECK(gain_dbi(pat, 2.5) == doctest::Approx(27.0));
    // Continuity at theta3: both branches give g0 - 12.
    CHECK(gain_dbi(pat, 5.0) == doctest::Approx(18.0));
    CHECK(gain_dbi(pat, 5.0 - 1e-9) == doctest::Approx(18.0).epsilon(1e-6));
    // One decade past theta3: g0 - 12 - 15.
    CHECK(gain_dbi(pat, 50.0) == doctest::Approx(3.0));
    CHECK(gain_dbi(pat, 180.0) == doctest::Approx(30.0 - 12.0 - 15.0 * std::log10(36.0)));
}

TEST_CASE("gain is monotone non-increasing in off-axis angle") {
    for (const PatternVariant v :
         {PatternVariant::QuadraticFloor, PatternVariant::ItuF1336Peak}) {
        AntennaPattern pat{30.0, 5.0, v, 30.0};
        double prev = gain_dbi(pat, 0.0);
        for (double t = 0.5; t <= 180.0; t += 0.5) {
            const double g = gain_dbi(pat, t);
            CHECK(g <= prev + 1e-12);
            prev = g;
        }
    }
}

TEST_CASE("gain is well-defined for callers folding |theta|") {
    AntennaPattern pat{30.0, 5.0, PatternVariant::QuadraticFloor, 30.0};
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-180.0, 180.0);
    for (int i = 0; i < 200; ++i) {
        const double t = u(rng);
        CHECK(gain_dbi(pat, std::abs(t)) == gain_dbi(pat, std::abs(-t)));
    }
}

TEST_CASE("gain_dbi rejects angles outside [0, 180] and invalid patterns") {
    AntennaPattern pat;
    CHECK_THROWS_AS(gain_dbi(pat, -0.001), InvalidInputError);
    CHECK_THROWS_AS(gain_dbi(pat, 180.001), InvalidInputError);
    CHECK_THROWS_AS(gain_dbi(pat, std::nan("")), InvalidInputError);
    AntennaPattern bad{30.0, 0.0, PatternVariant::QuadraticFloor, 30.0};
    CHECK_THROWS_AS(gain_dbi(bad, 1.0), ConfigError);
}

TEST_CASE("validate_pattern flags each broken invariant") {
    AntennaPattern ok;
    CHECK(validate_pattern(ok).empty());
    AntennaPattern wide{30.0, 121.0, PatternVariant::QuadraticFloor, 30.0};
    CHECK(validate_pattern(wide).size() == 1);
    AntennaPattern no_floor{30.0, 5.0, PatternVariant::QuadraticFloor, 0.0};
    CHECK(validate_pattern(no_floor).size() == 1);
    // floor_rel_db is unused by the ITU variant, so it is not checked there.
    AntennaPattern itu{30.0, 5.0, PatternVariant::ItuF1336Peak, 0.0};
    CHECK(validate_pattern(itu).empty());
}

TEST_CASE("pattern variant names round-trip") {
    for (const PatternVariant v :
         {PatternVariant::QuadraticFloor, PatternVariant::ItuF1336Peak}) {
        const auto parsed = pattern_variant_from_string(to_string(v));
        REQUIRE(parsed.has_value());
        CHECK(*parsed == v);
    }
    CHECK(!pattern_variant_from_string("cosine").has_value());
}
