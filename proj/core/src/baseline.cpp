#include "harmspace/baseline.hpp"

#include "harmspace/harmonic.hpp"
#include "internal/text.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace harmspace {

void BaselineConfig::validate(double fs) const {
    if (window < 8) throw std::invalid_argument("BaselineConfig: window must be >= 8");
    if (lowpass_hz <= 0.0 || lowpass_hz >= fs / 2.0)
        throw std::invalid_argument("BaselineConfig: lowpass_hz must satisfy 0 < lowpass < fs/2");
    if (db_floor <= 0.0) throw std::invalid_argument("BaselineConfig: db_floor must be > 0");
}

std::size_t BaselineConfig::feature_count(double fs) const {
    const double resolution = fs / static_cast<double>(window);
    const auto highest = static_cast<std::size_t>(lowpass_hz / resolution);
    return std::min(highest, window / 2 - 1);
}

Matrix extract_baseline_rows_linear(std::span<const double> x, double fs,
                                    const BaselineConfig& cfg) {
    cfg.validate(fs);
    const std::size_t n_window = cfg.window;
    if (x.size() < n_window)
        throw std::invalid_argument("extract_baseline_rows: signal (" + std::to_string(x.size()) +
                                    " samples) is shorter than one window (" +
                                    std::to_string(n_window) + ")");

    const auto w = blackman_window(n_window);
    const double c = window_energy_correction(w);
    const double half = static_cast<double>(n_window) / 2.0;
    const std::size_t n_segments = x.size() / n_window;
    const std::size_t keep = cfg.feature_count(fs);

    Matrix rows(n_segments, keep);
    std::vector<double> z(n_window);
    for (std::size_t i = 0; i < n_segments; ++i) {
        const double* seg = x.data() + i * n_window;
        for (std::size_t j = 0; j < n_window; ++j) z[j] = w[j] * seg[j];
        z = dc_remove(z);
        const std::vector<double> h = cfg.use_hilbert ? hilbert_envelope(z) : z;
        const std::vector<double> s = spectrum_bins(h, cfg.spectrum);
        for (std::size_t k = 0; k < keep; ++k) rows(i, k) = c * s[k + 1] / half;
    }
    return rows;
}

Matrix extract_baseline_rows(std::span<const double> x, double fs, const BaselineConfig& cfg) {
    Matrix rows = extract_baseline_rows_linear(x, fs, cfg);
    for (std::size_t i = 0; i < rows.rows(); ++i)
        for (std::size_t k = 0; k < rows.cols(); ++k)
            rows(i, k) = to_decibels(rows(i, k), cfg.db_floor);
    return rows;
}

std::string baseline_feature_label(std::size_t col, double fs, std::size_t window) {
    const double hz = static_cast<double>(col + 1) * fs / static_cast<double>(window);
    return "hz" + detail::format_double(hz);
}

} // namespace harmspace
