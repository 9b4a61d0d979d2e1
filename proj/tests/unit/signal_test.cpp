#include "harmspace/signal.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace harmspace;

TEST_CASE("window_size follows round(fs*d/fo)") {
    CHECK(window_size(100, 25, 4) == 16);
    CHECK(window_size(48000, 33.3333, 4) == 5760); // 2000 RPM
    CHECK(window_size(48000, 100, 4) == 1920);     // 6000 RPM
    CHECK(window_size(100, 50, 4) == 8);

    // Rounding is half away from zero.
    CHECK(window_size(17, 2, 1) == 9); // 8.5 -> 9

    CHECK_THROWS_AS(window_size(100, 0, 4), std::invalid_argument);
    CHECK_THROWS_AS(window_size(100, -5, 4), std::invalid_argument);
    // fo chosen so N = 4 < 8.
    CHECK_THROWS_AS(window_size(48000, 48000.0 * 4 / 4, 4), std::invalid_argument);
}

TEST_CASE("window_size is monotone non-increasing in fo") {
    std::size_t previous = window_size(48000, 10, 4);
    for (double fo = 11; fo <= 200; fo += 0.7) {
        const std::size_t n = window_size(48000, fo, 4);
        CHECK(n <= previous);
        previous = n;
    }
}

TEST_CASE("blackman_window endpoints and center") {
    const auto w3 = blackman_window(3);
    CHECK(w3[0] == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    CHECK(w3[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(w3[2] == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));

    const auto w5 = blackman_window(5);
    CHECK(w5[2] == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(blackman_window(1), std::invalid_argument);
}

TEST_CASE("blackman_window sum matches a direct evaluation of the closed form") {
    const auto w = blackman_window(64);
    double sum = 0.0;
    for (double v : w) sum += v;

    long double expected = 0.0L;
    for (int n = 0; n < 64; ++n) {
        const long double t = static_cast<long double>(n) / 63.0L;
        expected += 0.42L - 0.5L * std::cos(2.0L * std::numbers::pi_v<long double> * t) +
                    0.08L * std::cos(4.0L * std::numbers::pi_v<long double> * t);
    }
    CHECK(sum == doctest::Approx(static_cast<double>(expected)).epsilon(1e-12));
}

TEST_CASE("blackman_window is symmetric") {
    const auto w = blackman_window(129);
    for (std::size_t i = 0; i < w.size(); ++i)
        CHECK(w[i] == doctest::Approx(w[w.size() - 1 - i]).epsilon(1e-14));
}

TEST_CASE("window_energy_correction") {
    const std::vector<double> ones(37, 1.0);
    CHECK(window_energy_correction(ones) == doctest::Approx(1.0));

    const std::vector<double> halves(4, 0.5);
    CHECK(window_energy_correction(halves) == doctest::Approx(2.0));

    // Blackman: sum(w^2) ~= 0.3046 N, so c ~= 1.812 independent of N.
    const auto w = blackman_window(1024);
    double sum_sq = 0.0;
    for (double v : w) sum_sq += v * v;
    const double c = window_energy_correction(w);
    CHECK(c == doctest::Approx(std::sqrt(1024.0 / sum_sq)).epsilon(1e-12));
    CHECK(c == doctest::Approx(1.812).epsilon(2e-3));

    const std::vector<double> zeros(8, 0.0);
    CHECK_THROWS_AS(window_energy_correction(zeros), std::invalid_argument);
}

TEST_CASE("dc_remove") {
    const std::vector<double> constant{1, 1, 1, 1};
    for (double v : dc_remove(constant)) CHECK(v == doctest::Approx(0.0));

    const auto two = dc_remove(std::vector<double>{0, 2});
    CHECK(two[0] == doctest::Approx(-1.0));
    CHECK(two[1] == doctest::Approx(1.0));

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(-5.0, 5.0);
    std::vector<double> x(501);
    for (double& v : x) v = dist(rng);
    const auto y = dc_remove(x);
    double mean = 0.0;
    double peak = 1.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        mean += y[i];
        peak = std::max(peak, std::abs(x[i]));
    }
    mean /= static_cast<double>(y.size());
    CHECK(std::abs(mean) <= 1e-12 * peak);
}

TEST_CASE("hilbert_envelope recovers the amplitude of a cosine") {
    const std::size_t n = 256;
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = 2.0 * std::cos(2.0 * std::numbers::pi * 8.0 * static_cast<double>(i) /
                              static_cast<double>(n));
    const auto env = hilbert_envelope(x);
    for (std::size_t i = n / 8; i < 7 * n / 8; ++i)
        CHECK(env[i] == doctest::Approx(2.0).epsilon(0.01));
}

TEST_CASE("hilbert_envelope of zeros is zero and scales positively") {
    const std::vector<double> zeros(64, 0.0);
    for (double v : hilbert_envelope(zeros)) CHECK(v == doctest::Approx(0.0));

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> x(128);
    for (double& v : x) v = dist(rng);
    std::vector<double> scaled(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) scaled[i] = 3.5 * x[i];

    const auto env = hilbert_envelope(x);
    const auto env_scaled = hilbert_envelope(scaled);
    for (std::size_t i = 0; i < x.size(); ++i)
        CHECK(env_scaled[i] == doctest::Approx(3.5 * env[i]).epsilon(1e-12));

    CHECK_THROWS_AS(hilbert_envelope(std::vector<double>{1, 2, 3}), std::invalid_argument);
}

TEST_CASE("hilbert_envelope of a pure cosine is flat over the central half") {
    const std::size_t n = 1024;
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = std::cos(2.0 * std::numbers::pi * 32.0 * static_cast<double>(i) /
                        static_cast<double>(n));
    const auto env = hilbert_envelope(x);
    double lo = env[n / 4];
    double hi = env[n / 4];
    for (std::size_t i = n / 4; i < 3 * n / 4; ++i) {
        lo = std::min(lo, env[i]);
        hi = std::max(hi, env[i]);
    }
    CHECK(hi / lo <= 1.02);
}

TEST_CASE("spectrum bins: constant and pure tone") {
    const std::size_t n = 64;
    std::vector<double> constant(n, 3.0);
    const auto bins = spectrum_bins(constant);
    REQUIRE(bins.size() == n / 2);
    CHECK(bins[0] == doctest::Approx(3.0 * n).epsilon(1e-9));
    for (std::size_t k = 1; k < bins.size(); ++k)
        CHECK(bins[k] == doctest::Approx(0.0).scale(1.0).epsilon(1e-8));

    std::vector<double> tone(n);
    for (std::size_t i = 0; i < n; ++i)
        tone[i] =
            std::cos(2.0 * std::numbers::pi * 5.0 * static_cast<double>(i) / static_cast<double>(n));
    const auto tone_bins = spectrum_bins(tone);
    std::size_t argmax = 1;
    for (std::size_t k = 1; k < tone_bins.size(); ++k)
        if (tone_bins[k] > tone_bins[argmax]) argmax = k;
    CHECK(argmax == 5);
}

TEST_CASE("spectrum matches a direct DFT and satisfies Parseval") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    // Odd, non-power-of-two length: the backend must do an exact-length
    // transform.
    std::vector<double> x(101);
    for (double& v : x) v = dist(rng);

    const auto dft = oracles::naive_dft(x);
    const auto bins = spectrum_bins(x);
    REQUIRE(bins.size() == x.size() / 2);
    for (std::size_t k = 0; k < bins.size(); ++k)
        CHECK(bins[k] == doctest::Approx(std::abs(dft[k])).epsilon(1e-9));

    // Parseval over the full two-sided transform.
    long double spectral = 0.0L;
    for (const auto& c : dft) spectral += std::norm(std::complex<long double>(c));
    spectral /= static_cast<long double>(x.size());
    long double direct = 0.0L;
    for (double v : x) direct += static_cast<long double>(v) * static_cast<long double>(v);
    CHECK(static_cast<double>(spectral) ==
          doctest::Approx(static_cast<double>(direct)).epsilon(1e-9));

    // Power bins are the squared magnitude bins.
    const auto power = spectrum_bins(x, SpectrumKind::power);
    for (std::size_t k = 0; k < bins.size(); ++k)
        CHECK(power[k] == doctest::Approx(bins[k] * bins[k]).epsilon(1e-9));
}

TEST_CASE("one_sided_spectrum carries the bin resolution") {
    std::vector<double> x(200, 0.0);
    x[3] = 1.0;
    const Spectrum s = one_sided_spectrum(x, 48000.0);
    CHECK(s.bins.size() == 100);
    CHECK(s.resolution == doctest::Approx(240.0));
}
