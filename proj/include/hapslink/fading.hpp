#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hapslink {

// Narrowband Ricean channel at one receive location.
//   mean_snr_lin : average SNR (linear), > 0
//   k_factor_lin : ratio of line-of-sight to scattered power, >= 0
//   rate_bps_hz  : target spectral efficiency, > 0
struct RiceanLink {
    double mean_snr_lin = 1.0;
    double k_factor_lin = 0.0;
    double rate_bps_hz = 1.0;
};

std::vector<std::string> validate_link(const RiceanLink& link);
void require_valid(const RiceanLink& link);

// First-order Marcum Q function Q1(a, b), the integral from b to infinity of
// x exp(-(x^2 + a^2)/2) I0(a x) dx. Supported domain a, b in [0, 50] with
// absolute error <= 1e-10; out-of-range or non-finite input throws
// InvalidInputError.
double marcum_q1(double a, double b);

// Outage probability of a rate-R transmission: P[log2(1 + snr) < R]
// = 1 - Q1(sqrt(2K), sqrt(2 (K+1) x)) with x = (2^R - 1) / mean_snr.
// K = 0 reduces to the Rayleigh closed form 1 - exp(-x).
double ricean_outage(const RiceanLink& link);

// Monte-Carlo estimate of the same outage from n channel draws. Fixed
// 65536-sample chunks each run on their own seed-derived RNG stream, so the
// result depends only on (link, n, seed), not on `workers`.
double mc_outage(const RiceanLink& link, std::uint64_t n, std::uint64_t seed,
                 unsigned workers = 1);

namespace detail {

// Exponentially scaled modified Bessel values e^-z I_k(z) for k = 0..kmax.
// Downward (Miller) recurrence normalized by I0 + 2 sum I_k = e^z.
std::vector<double> scaled_bessel_i_batch(double z, int kmax);

// Regularized upper incomplete gamma Q(s, x) for s > 0, x >= 0.
double upper_gamma_regularized(double s, double x);

// Q1 for arbitrary non-negative arguments; used internally for K factors
// that push sqrt(2K) past the documented marcum_q1 domain.
double marcum_q1_unrestricted(double a, double b);

}  // namespace detail

}  // namespace hapslink
