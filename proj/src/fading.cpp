#include "hapslink/fading.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <thread>

#include "hapslink/error.hpp"

namespace hapslink {

namespace {

// Documented marcum_q1 domain; larger arguments take the windowed path in
// marcum_q1_unrestricted.
constexpr double kMarcumMaxArg = 50.0;

// exp underflows to 0 below roughly -745.

constexpr double kExpUnderflow = -745.0;

double clamp01(double p) { return std::min(1.0, std::max(0.0, p)); }

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Bessel-series evaluation of Q1 on the bounded domain. Sums the side of the
// cumulative that avoids cancellation: terms are non-negative and monotone
// decreasing, so truncation error stays below the last added term.
double marcum_q1_series(double a, double b) {
    if (b == 0.0) return 1.0;
    if (a == 0.0) {
        const double e = -0.5 * b * b;
        return e < kExpUnderflow ? 0.0 : std::exp(e);
    }
    const double z = a * b;
    // Scaled I_k(z) decays like exp(-k^2 / 2z) for k << z; 88 > 2 ln(1e-18).
    const int kmax = static_cast<int>(std::sqrt(88.0 * z)) + 40;
    const auto ik = detail::scaled_bessel_i_batch(z, kmax);
    const double d = a - b;
    const double pref = std::exp(-0.5 * d * d);

    if (b >= a) {
        // Q1 = exp(-(a-b)^2/2) * sum_{k>=0} (a/b)^k e^-ab I_k(ab)
        const double r = a / b;
        double rk = 1.0;
        double sum = 0.0;
        for (int k = 0; k <= kmax; ++k) {
            const double term = rk * ik[static_cast<std::size_t>(k)];
            sum += term;
            if (k > 2 && term < sum * 1e-16) break;
            rk *= r;
        }
        return clamp01(pref * sum);
    }
    // 1 - Q1 = exp(-(a-b)^2/2) * sum_{k>=1} (b/a)^k e^-ab I_k(ab)
    const double r = b / a;
    double rk = r;
    double sum = 0.0;
    for (int k = 1; k <= kmax; ++k) {
        const double term = rk * ik[static_cast<std::size_t>(k)];
        sum += term;
        if (k > 2 && term < sum * 1e-16) break;
        rk *= r;
    }
    return clamp01(1.0 - pref * sum);
}

}  // namespace

namespace detail {

std::vector<double> scaled_bessel_i_batch(double z, int kmax) {
    if (!std::isfinite(z) || z <= 0.0)
        throw InvalidInputError("scaled_bessel_i_batch: z must be finite and > 0");
    if (kmax < 0) throw InvalidInputError("scaled_bessel_i_batch: kmax must be >= 0");
    std::vector<double> out(static_cast<std::size_t>(kmax) + 1, 0.0);

    if (z < 2.0) {
        // Ascending series per order; a few terms suffice and e^-z is safe.
        const double ez = std::exp(-z);
        const double h = 0.5 * z;
        double front = 1.0;  // (z/2)^k / k!
        for (int k = 0; k <= kmax; ++k) {
            double term = front;
            double sum = term;
            for (int m = 1; m < 64; ++m) {
                term *= h * h / (static_cast<double>(m) * (m + k));
                sum += term;
                if (term < sum * 1e-18) break;
            }
            out[static_cast<std::size_t>(k)] = ez * sum;
            front *= h / (k + 1);
            if (front == 0.0) break;  // deeper orders underflow to 0
        }
        return out;
    }

    // Miller downward recurrence seeded above kmax; the start offset keeps
    // the contamination of the dominant solution below double precision.
    // The normalization sum I0 + 2 sum I_k also has to cover essentially all
    // of the mass of e^-z I_k(z) over k, which decays like exp(-k^2 / 2z):
    // raise the base order to sqrt(80 z) (tail < 1e-17) when kmax is small.
    const int base = std::max(kmax, static_cast<int>(std::sqrt(80.0 * z)) + 1);
    const int start =
        base + static_cast<int>(2.0 * std::sqrt(static_cast<double>(base) + z)) + 40;
    std::vector<double> raw(static_cast<std::size_t>(start) + 2, 0.0);
    raw[static_cast<std::size_t>(start)] = 1e-30;
    for (int k = start; k >= 1; --k) {
        raw[static_cast<std::size_t>(k) - 1] =
            raw[static_cast<std::size_t>(k) + 1] + (2.0 * k / z) * raw[static_cast<std::size_t>(k)];
        if (raw[static_cast<std::size_t>(k) - 1] > 1e250) {
            for (std::size_t j = static_cast<std::size_t>(k) - 1; j < raw.size(); ++j)
                raw[j] *= 1e-250;
        }
    }
    // e^z = I0(z) + 2 sum_{k>=1} I_k(z), so the scaled values sum to 1.
    double norm = raw[0];
    for (int k = 1; k <= start; ++k) norm += 2.0 * raw[static_cast<std::size_t>(k)];
    for (int k = 0; k <= kmax; ++k)
        out[static_cast<std::size_t>(k)] = raw[static_cast<std::size_t>(k)] / norm;
    return out;
}

double upper_gamma_regularized(double s, double x) {
    if (!std::isfinite(s) || s <= 0.0)
        throw InvalidInputError("upper_gamma_regularized: s must be > 0");
    if (!std::isfinite(x) || x < 0.0)
        throw InvalidInputError("upper_gamma_regularized: x must be >= 0");
    if (x == 0.0) return 1.0;
    const double logpre = s * std::log(x) - x - std::lgamma(s);

    if (x < s + 1.0) {
        // Ascending series for the lower function P(s, x).
        double ap = s;
        double del = 1.0 / s;
        double sum = del;
        for (int i = 0; i < 10000; ++i) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (del < sum * 1e-17) break;
        }
        const double p = logpre < kExpUnderflow ? 0.0 : sum * std::exp(logpre);
        return clamp01(1.0 - p);
    }

    // Modified Lentz continued fraction for Q(s, x); b0 >= 2 on this branch.
    constexpr double fpmin = 1e-300;
    double b = x + 1.0 - s;
    double c = 1.0 / fpmin;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 10000; ++i) {
        const double an = -static_cast<double>(i) * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < fpmin) d = fpmin;
        c = b + an / c;
        if (std::abs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return clamp01(logpre < kExpUnderflow ? 0.0 : std::exp(logpre) * h);
}

double marcum_q1_unrestricted(double a, double b) {
    if (!std::isfinite(a) || !std::isfinite(b) || a < 0.0 || b < 0.0)
        throw InvalidInputError("marcum_q1: arguments must be finite and >= 0");
    if (a <= kMarcumMaxArg && b <= kMarcumMaxArg) return marcum_q1_series(a, b);
    if (b == 0.0) return 1.0;
    if (a == 0.0) {
        const double e = -0.5 * b * b;
        return e < kExpUnderflow ? 0.0 : std::exp(e);
    }

    const double d = b - a;
    // Gaussian-tail saturation: for b - a = 40 the envelope exp(-d^2/2)
    // is ~1e-348, below double underflow even with large polynomial slack.
    if (d >= 40.0) return 0.0;
    if (d <= -40.0) return 1.0;

    const double lambda = 0.5 * a * a;
    const double mu = 0.5 * b * b;
    if (lambda > 1e8) {
        // Normal limit of the noncentral chi-square mixture; relative error
        // ~1/sqrt(lambda), fine for this saturated regime.
        return clamp01(0.5 * std::erfc(d / std::numbers::sqrt2));
    }

    // Q1(a, b) = sum_n Pois(n; a^2/2) Q(n+1, b^2/2): chi-square mixture with
    // Poisson weights. A +-12 sigma window bounds the discarded mass near
    // 1e-31. Q(n+1, mu) advances by one scaled Poisson term per order.
    const double w = 12.0 * std::sqrt(lambda) + 40.0;
    const std::uint64_t nlo =
        lambda > w ? static_cast<std::uint64_t>(lambda - w) : 0;
    const std::uint64_t nhi = static_cast<std::uint64_t>(lambda + w) + 1;
    const double llam = std::log(lambda);
    const double lmu = std::log(mu);
    double q = upper_gamma_regularized(static_cast<double>(nlo) + 1.0, mu);
    double sum = 0.0;
    for (std::uint64_t n = nlo;; ++n) {
        const double nn = static_cast<double>(n);
        const double lp = -lambda + nn * llam - std::lgamma(nn + 1.0);
        if (lp > kExpUnderflow) sum += std::exp(lp) * q;
        if (n == nhi) break;
        const double lt = -mu + (nn + 1.0) * lmu - std::lgamma(nn + 2.0);
        if (lt > kExpUnderflow) q = std::min(1.0, q + std::exp(lt));
    }
    return clamp01(sum);
}

}  // namespace detail

std::vector<std::string> validate_link(const RiceanLink& link) {
    std::vector<std::string> out;
    if (!std::isfinite(link.mean_snr_lin) || link.mean_snr_lin <= 0.0)
        out.push_back("link mean SNR must be > 0 (linear)");
    if (!std::isfinite(link.k_factor_lin) || link.k_factor_lin < 0.0)
        out.push_back("link K factor must be >= 0 (linear)");
    if (!std::isfinite(link.rate_bps_hz) || link.rate_bps_hz <= 0.0)
        out.push_back("link rate must be > 0 b/s/Hz");
    return out;
}

void require_valid(const RiceanLink& link) {
    auto v = validate_link(link);
    if (!v.empty()) throw ConfigError(v);
}

double marcum_q1(double a, double b) {
    if (!std::isfinite(a) || !std::isfinite(b) || a < 0.0 || b < 0.0 || a > kMarcumMaxArg ||
        b > kMarcumMaxArg)
        throw InvalidInputError("marcum_q1: arguments must be finite and in [0, 50]");
    return marcum_q1_series(a, b);
}

double ricean_outage(const RiceanLink& link) {
    require_valid(link);
    const double gamma_th = std::exp2(link.rate_bps_hz) - 1.0;
    const double x = gamma_th / link.mean_snr_lin;
    // Rates past ~1024 b/s/Hz overflow the threshold; outage is then certain.
    if (!std::isfinite(x)) return 1.0;
    const double k = link.k_factor_lin;
    const double a = std::sqrt(2.0 * k);
    const double b = std::sqrt(2.0 * (k + 1.0) * x);
    return clamp01(1.0 - detail::marcum_q1_unrestricted(a, b));
}

double mc_outage(const RiceanLink& link, std::uint64_t n, std::uint64_t seed, unsigned workers) {
    require_valid(link);
    if (n == 0) throw InvalidInputError("mc_outage: sample count must be >= 1");
    if (workers == 0) throw InvalidInputError("mc_outage: workers must be >= 1");

    const double gamma_th = std::exp2(link.rate_bps_hz) - 1.0;
    const double k = link.k_factor_lin;
    const double los = std::sqrt(k / (k + 1.0));
    const double sigma = std::sqrt(0.5 / (k + 1.0));
    const double gbar = link.mean_snr_lin;

    constexpr std::uint64_t kChunk = 65536;
    const std::uint64_t nchunks = (n + kChunk - 1) / kChunk;

    // Each chunk owns an RNG derived from (seed, chunk index), so sample i
    // never depends on how chunks are spread over workers.
    auto chunk_count = [&](std::uint64_t c) -> std::uint64_t {
        std::mt19937_64 eng(splitmix64(seed + c));
        const std::uint64_t lo = c * kChunk;
        const std::uint64_t hi = std::min(n, lo + kChunk);
        std::uint64_t cnt = 0;
        for (std::uint64_t i = lo; i < hi; ++i) {
            // Box-Muller on u1 in (0, 1], u2 in (0, 1]: one pair per draw.
            const double u1 = (static_cast<double>(eng() >> 11) + 1.0) * 0x1.0p-53;
            const double u2 = (static_cast<double>(eng() >> 11) + 1.0) * 0x1.0p-53;
            const double rad = std::sqrt(-2.0 * std::log(u1));
            const double ang = 2.0 * std::numbers::pi * u2;
            const double re = los + sigma * rad * std::cos(ang);
            const double im = sigma * rad * std::sin(ang);
            if (gbar * (re * re + im * im) < gamma_th) ++cnt;
        }
        return cnt;
    };

    const unsigned w =
        static_cast<unsigned>(std::min<std::uint64_t>(workers, nchunks));
    std::vector<std::uint64_t> partial(w, 0);
    {
        std::vector<std::jthread> threads;
        threads.reserve(w);
        for (unsigned t = 0; t < w; ++t) {
            threads.emplace_back([&, t] {
                std::uint64_t s = 0;
                for (std::uint64_t c = t; c < nchunks; c += w) s += chunk_count(c);
                partial[t] = s;
            });
        }
    }
    std::uint64_t total = 0;
    for (std::uint64_t v : partial) total += v;
    return static_cast<double>(total) / static_cast<double>(n);
}

}  // namespace hapslink
