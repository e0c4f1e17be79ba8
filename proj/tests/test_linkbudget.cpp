#include <doctest.h>

#include <cmath>

#include "hapslink/error.hpp"
#include "hapslink/linkbudget.hpp"

using namespace hapslink;

TEST_CASE("fspl_db matches the closed form at 20 km / 10 GHz") {
    // 20 log10(4 pi d f / c) with c = 299792458 m/s.
    CHECK(fspl_db(20000.0, 10e9) == doctest::Approx(138.46838313516298).epsilon(1e-12));
    CHECK(fspl_db(22366.26924634504, 10e9) ==
          doctest::Approx(139.43965419496584).epsilon(1e-12));
    // +20 dB per decade of distance and of frequency.
    CHECK(fspl_db(200000.0, 10e9) - fspl_db(20000.0, 10e9) == doctest::Approx(20.0));
    CHECK(fspl_db(20000.0, 100e9) - fspl_db(20000.0, 10e9) == doctest::Approx(20.0));
}

TEST_CASE("fspl_db rejects non-positive distance or frequency") {
    CHECK_THROWS_AS(fspl_db(0.0, 10e9), InvalidInputError);
    CHECK_THROWS_AS(fspl_db(-1.0, 10e9), InvalidInputError);
    CHECK_THROWS_AS(fspl_db(100.0, 0.0), InvalidInputError);
    CHECK_THROWS_AS(fspl_db(std::nan(""), 10e9), InvalidInputError);
}

TEST_CASE("noise_dbm matches kTB at 10 MHz / 297.15 K") {
    CHECK(noise_dbm(10e6, 297.15, 0.0) ==
          doctest::Approx(-103.86940982727538).epsilon(1e-12));
    // Noise figure is a straight dB offset.
    CHECK(noise_dbm(10e6, 297.15, 5.0) - noise_dbm(10e6, 297.15, 0.0) ==
          doctest::Approx(5.0));
    // 10x bandwidth adds 10 dB.
    CHECK(noise_dbm(100e6, 297.15, 0.0) - noise_dbm(10e6, 297.15, 0.0) ==
          doctest::Approx(10.0));
    CHECK_THROWS_AS(noise_dbm(0.0, 297.15, 0.0), InvalidInputError);
    CHECK_THROWS_AS(noise_dbm(10e6, -1.0, 0.0), InvalidInputError);
    CHECK_THROWS_AS(noise_dbm(10e6, 297.15, -0.1), InvalidInputError);
}

TEST_CASE("mean_snr_db composes the budget terms") {
    RadioConfig cfg;  // 10 GHz, 10 MHz, 297.15 K, 40 dBm, 0 dBi rx, 0 dB NF
    // 40 + 30 + 0 - fspl(20 km) - noise = 35.401027 dB.
    CHECK(mean_snr_db(cfg, 30.0, 20000.0) ==
          doctest::Approx(35.401026692112396).epsilon(1e-12));
    // Adding tx power, tx gain, or rx gain shifts SNR 1:1.
    RadioConfig up = cfg;
    up.tx_power_dbm += 7.0;
    CHECK(mean_snr_db(up, 30.0, 20000.0) - mean_snr_db(cfg, 30.0, 20000.0) ==
          doctest::Approx(7.0));
    CHECK(mean_snr_db(cfg, 33.0, 20000.0) - mean_snr_db(cfg, 30.0, 20000.0) ==
          doctest::Approx(3.0));
    up = cfg;
    up.rx_gain_dbi = 2.0;
    CHECK(mean_snr_db(up, 30.0, 20000.0) - mean_snr_db(cfg, 30.0, 20000.0) ==
          doctest::Approx(2.0));
}

TEST_CASE("validate_radio aggregates violations") {
    RadioConfig bad;
    bad.carrier_hz = 0.0;
    bad.bandwidth_hz = -5.0;
    bad.noise_figure_db = -1.0;
    CHECK(validate_radio(bad).size() == 3);
    CHECK_THROWS_AS(require_valid(bad), ConfigError);
    CHECK(validate_radio(RadioConfig{}).empty());
}
