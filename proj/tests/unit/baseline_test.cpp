#include "harmspace/baseline.hpp"

#include "harmspace/harmonic.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

using namespace harmspace;

namespace {

std::vector<double> tone(double freq, double fs, double seconds) {
    std::vector<double> x(static_cast<std::size_t>(seconds * fs));
    for (std::size_t i = 0; i < x.size(); ++i)
        x[i] = std::cos(2.0 * std::numbers::pi * freq * static_cast<double>(i) / fs);
    return x;
}

} // namespace

TEST_CASE("baseline keeps 1024 bins at the stock settings") {
    // fs/N ~= 5.857 Hz per bin; floor(6000 / 5.857) = 1024.
    BaselineConfig cfg;
    CHECK(cfg.feature_count(48000.0) == 1024);

    const auto rows = extract_baseline_rows(tone(1000.0, 48000.0, 1.0), 48000.0, cfg);
    REQUIRE(rows.rows() == 5); // floor(48000 / 8196)
    CHECK(rows.cols() == 1024);
}

TEST_CASE("a 1 kHz tone lands in raw bin 171") {
    BaselineConfig cfg;
    const auto rows = extract_baseline_rows(tone(1000.0, 48000.0, 1.0), 48000.0, cfg);
    for (std::size_t i = 0; i < rows.rows(); ++i) {
        std::size_t best = 0;
        for (std::size_t k = 0; k < rows.cols(); ++k)
            if (rows(i, k) > rows(i, best)) best = k;
        // Column j holds raw bin j+1: round(1000 / 5.857) = 171.
        CHECK(best + 1 == 171);
    }
}

TEST_CASE("zero signal gives all-floor dB rows") {
    BaselineConfig cfg;
    const std::vector<double> zeros(8196, 0.0);
    const auto rows = extract_baseline_rows(zeros, 48000.0, cfg);
    for (std::size_t k = 0; k < rows.cols(); ++k)
        CHECK(rows(0, k) == doctest::Approx(-240.0).epsilon(1e-6));
}

TEST_CASE("baseline bin index moves with fo, unlike the harmonic extractor") {
    BaselineConfig cfg;
    std::vector<std::size_t> argmaxes;
    for (double fo : {20.0, 40.0, 60.0}) {
        const auto rows = extract_baseline_rows(tone(5.0 * fo, 48000.0, 1.0), 48000.0, cfg);
        std::size_t best = 0;
        for (std::size_t k = 0; k < rows.cols(); ++k)
            if (rows(0, k) > rows(0, best)) best = k;
        argmaxes.push_back(best);
    }
    // Doubling / tripling the frequency moves the peak proportionally.
    CHECK(argmaxes[1] > 1.8 * argmaxes[0]);
    CHECK(argmaxes[2] > 2.7 * argmaxes[0]);
}

TEST_CASE("all speeds share the same column count") {
    BaselineConfig cfg;
    const auto a = extract_baseline_rows(tone(100.0, 48000.0, 0.5), 48000.0, cfg);
    const auto b = extract_baseline_rows(tone(700.0, 48000.0, 1.0), 48000.0, cfg);
    CHECK(a.cols() == b.cols());
}

TEST_CASE("linear and dB variants agree") {
    BaselineConfig cfg;
    const auto signal = tone(300.0, 48000.0, 0.5);
    const auto linear = extract_baseline_rows_linear(signal, 48000.0, cfg);
    const auto db = extract_baseline_rows(signal, 48000.0, cfg);
    REQUIRE(linear.rows() == db.rows());
    for (std::size_t k = 0; k < linear.cols(); ++k)
        CHECK(db(0, k) == doctest::Approx(to_decibels(linear(0, k), cfg.db_floor)));
}

TEST_CASE("baseline validation") {
    BaselineConfig cfg;
    cfg.window = 4;
    CHECK_THROWS_AS(cfg.validate(48000.0), std::invalid_argument);

    cfg = BaselineConfig{};
    cfg.lowpass_hz = 30000.0; // above Nyquist
    CHECK_THROWS_AS(cfg.validate(48000.0), std::invalid_argument);

    cfg = BaselineConfig{};
    CHECK_THROWS_AS(extract_baseline_rows(std::vector<double>(100, 1.0), 48000.0, cfg),
                    std::invalid_argument);
}

TEST_CASE("baseline labels carry the bin frequency") {
    CHECK(baseline_feature_label(0, 48000.0, 4800) == "hz10");
    CHECK(baseline_feature_label(9, 48000.0, 4800) == "hz100");
}
