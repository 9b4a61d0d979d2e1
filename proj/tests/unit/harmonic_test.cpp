#include "harmspace/harmonic.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

using namespace harmspace;

namespace {

std::vector<double> tone(double freq, double fs, double seconds, double amplitude = 1.0) {
    std::vector<double> x(static_cast<std::size_t>(seconds * fs));
    for (std::size_t i = 0; i < x.size(); ++i)
        x[i] = amplitude * std::cos(2.0 * std::numbers::pi * freq * static_cast<double>(i) / fs);
    return x;
}

std::size_t argmax_from(const Matrix& m, std::size_t row, std::size_t first_col) {
    std::size_t best = first_col;
    for (std::size_t k = first_col; k < m.cols(); ++k)
        if (m(row, k) > m(row, best)) best = k;
    return best;
}

HarmonicConfig plain_config() {
    HarmonicConfig cfg;
    cfg.d = 4;
    cfg.fs = 48000.0;
    cfg.fo_max = 100.0;
    cfg.use_hilbert = false;
    cfg.max_harmonics = 60;
    return cfg;
}

} // namespace

TEST_CASE("a tone at the shaft frequency lands in column d at any speed") {
    const HarmonicConfig cfg = plain_config();

    // fo = 50 Hz: N = 3840, the tone sits in bin 4.
    const auto rows50 = extract_harmonic_rows(tone(50.0, cfg.fs, 1.0), 50.0, cfg);
    REQUIRE(rows50.rows() == 12); // floor(48000 / 3840)
    for (std::size_t i = 0; i < rows50.rows(); ++i) CHECK(argmax_from(rows50, i, 1) == 4);

    // Halving fo doubles N but the tone still lands in bin 4.
    const auto rows25 = extract_harmonic_rows(tone(25.0, cfg.fs, 1.0), 25.0, cfg);
    REQUIRE(rows25.rows() == 6);
    for (std::size_t i = 0; i < rows25.rows(); ++i) CHECK(argmax_from(rows25, i, 1) == 4);
}

TEST_CASE("zero signal extracts to near-zero rows") {
    const HarmonicConfig cfg = plain_config();
    const std::vector<double> zeros(48000, 0.0);
    const auto rows = extract_harmonic_rows(zeros, 50.0, cfg);
    for (std::size_t i = 0; i < rows.rows(); ++i)
        for (std::size_t k = 0; k < rows.cols(); ++k) CHECK(std::abs(rows(i, k)) < 1e-12);
}

TEST_CASE("signal shorter than one window is an error") {
    const HarmonicConfig cfg = plain_config();
    CHECK_THROWS_AS(extract_harmonic_rows(std::vector<double>(100, 1.0), 50.0, cfg),
                    std::invalid_argument);
}

TEST_CASE("row count is floor(len/N) with no overlap or padding") {
    const HarmonicConfig cfg = plain_config();
    // N = 3840 at fo = 50.
    const auto rows = extract_harmonic_rows(tone(50.0, cfg.fs, 1.0, 1.0), 50.0, cfg);
    CHECK(rows.rows() == 12);
    const std::vector<double> longer(3840 * 3 + 3839, 0.1);
    CHECK(extract_harmonic_rows(longer, 50.0, cfg).rows() == 3); // tail discarded
}

TEST_CASE("harmonic alignment holds for harmonics 1, 2 and 5 over a 3:1 fo range") {
    const HarmonicConfig cfg = plain_config();
    const double fos[] = {20.0, 33.33, 50.0, 60.0};
    const unsigned harmonics[] = {1, 2, 5};
    for (double fo : fos) {
        for (unsigned h : harmonics) {
            const auto rows = extract_harmonic_rows(tone(h * fo, cfg.fs, 1.0), fo, cfg);
            for (std::size_t i = 0; i < rows.rows(); ++i)
                CHECK(argmax_from(rows, i, 1) == static_cast<std::size_t>(h) * cfg.d);
        }
    }
}

TEST_CASE("peak amplitude is comparable across speeds for a fixed-amplitude tone") {
    const HarmonicConfig cfg = plain_config();
    double lo = 1e300;
    double hi = -1e300;
    for (double fo : {20.0, 33.33, 50.0, 66.67}) {
        const auto rows = extract_harmonic_rows(tone(fo, cfg.fs, 1.0, 2.0), fo, cfg);
        const double peak = rows(0, cfg.d);
        lo = std::min(lo, peak);
        hi = std::max(hi, peak);
    }
    CHECK((hi - lo) / lo <= 0.03);
}

TEST_CASE("combine_channels") {
    Matrix a(2, 3);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t k = 0; k < 3; ++k) a(i, k) = static_cast<double>(i * 3 + k + 1);

    // Single channel is the identity.
    CHECK(combine_channels({a}) == a);

    // Two identical channels scale by sqrt(2).
    const auto doubled = combine_channels({a, a});
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t k = 0; k < 3; ++k)
            CHECK(doubled(i, k) == doctest::Approx(std::numbers::sqrt2 * a(i, k)));

    // 3-4-5 triangle.
    Matrix three(1, 1);
    three(0, 0) = 3.0;
    Matrix four(1, 1);
    four(0, 0) = 4.0;
    CHECK(combine_channels({three, four})(0, 0) == doctest::Approx(5.0));

    // Channel order does not matter.
    Matrix b = a;
    b(1, 2) = 9.0;
    const auto ab = combine_channels({a, b});
    const auto ba = combine_channels({b, a});
    CHECK(ab == ba);

    Matrix mismatched(3, 3);
    CHECK_THROWS_AS(combine_channels({a, mismatched}), std::invalid_argument);
    CHECK_THROWS_AS(combine_channels({}), std::invalid_argument);
}

TEST_CASE("trim_features keeps floor(n_min/2) columns") {
    Matrix m(2, 10);
    for (std::size_t k = 0; k < 10; ++k) m(0, k) = static_cast<double>(k);

    const auto trimmed = trim_features(m, 8);
    CHECK(trimmed.cols() == 4);
    CHECK(trimmed(0, 3) == 3.0);

    // Already the right width: identity.
    CHECK(trim_features(trimmed, 8) == trimmed);

    CHECK_THROWS_AS(trim_features(Matrix(2, 3), 8), std::invalid_argument);
}

TEST_CASE("a two-speed dataset trims every row to the fo_max feature count") {
    // fs = 100, d = 4: N(fo=25) = 16 -> 8 raw bins; N(fo=50) = 8 -> 4 raw
    // bins. N_min = 8, so both speeds end with floor(8/2) = 4 columns.
    HarmonicConfig cfg;
    cfg.d = 4;
    cfg.fs = 100.0;
    cfg.fo_max = 50.0;
    cfg.use_hilbert = false;
    cfg.max_harmonics = 60; // irrelevant here

    const std::size_t n_min = cfg.min_window();
    CHECK(n_min == 8);

    const auto slow = trim_features(extract_harmonic_rows(tone(25.0, cfg.fs, 1.0), 25.0, cfg), n_min);
    const auto fast = trim_features(extract_harmonic_rows(tone(50.0, cfg.fs, 1.0), 50.0, cfg), n_min);
    CHECK(slow.cols() == 4);
    CHECK(fast.cols() == 4);
}

TEST_CASE("postprocess drops DC, keeps max_harmonics*d columns and converts to dB") {
    HarmonicConfig cfg = plain_config();

    Matrix raw(1, 961);
    for (std::size_t k = 0; k < raw.cols(); ++k) raw(0, k) = 1.0;
    raw(0, 1) = 10.0;
    raw(0, 2) = 0.0;

    const auto post = postprocess(raw, cfg);
    CHECK(post.cols() == 240); // d=4, 60 harmonics inclusive
    CHECK(post(0, 0) == doctest::Approx(20.0));  // 10 -> 20 dB
    CHECK(post(0, 1) == doctest::Approx(-240.0)); // clamped at the 1e-12 floor
    CHECK(post(0, 2) == doctest::Approx(0.0));   // 1 -> 0 dB

    CHECK(to_decibels(1.0, 1e-12) == doctest::Approx(0.0));
    CHECK(to_decibels(0.0, 1e-12) == doctest::Approx(-240.0));

    CHECK_THROWS_AS(postprocess(Matrix(1, 100), cfg), std::invalid_argument);
}

TEST_CASE("postprocess preserves order within a column") {
    HarmonicConfig cfg = plain_config();
    cfg.max_harmonics = 2;
    Matrix raw(3, 9);
    raw(0, 1) = 0.5;
    raw(1, 1) = 2.0;
    raw(2, 1) = 1.0;
    const auto post = postprocess(raw, cfg);
    CHECK(post(0, 0) < post(2, 0));
    CHECK(post(2, 0) < post(1, 0));
}

TEST_CASE("config validation catches an oversized harmonic budget") {
    HarmonicConfig cfg = plain_config();
    cfg.validate(); // 240 <= 960

    cfg.fo_max = 500.0; // N_min = 384, budget 192 < 240
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("feature labels are harmonic fractions") {
    CHECK(harmonic_feature_label(0, 4) == "h0.25");
    CHECK(harmonic_feature_label(3, 4) == "h1");
    CHECK(harmonic_feature_label(239, 4) == "h60");
}
