#include "harmspace/harmonic.hpp"

#include "internal/text.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace harmspace {

std::size_t HarmonicConfig::min_window() const {
    return window_size(fs, fo_max, d);
}

void HarmonicConfig::validate() const {
    if (d < 1) throw std::invalid_argument("HarmonicConfig: d must be >= 1");
    if (fo_max <= 0.0) throw std::invalid_argument("HarmonicConfig: fo_max must be > 0");
    if (max_harmonics < 1) throw std::invalid_argument("HarmonicConfig: max_harmonics must be >= 1");
    if (db_floor <= 0.0) throw std::invalid_argument("HarmonicConfig: db_floor must be > 0");
    const std::size_t n_min = min_window();
    if (feature_count() > n_min / 2)
        throw std::invalid_argument(
            "HarmonicConfig: max_harmonics*d = " + std::to_string(feature_count()) +
            " exceeds the feature budget N_min/2 = " + std::to_string(n_min / 2) +
            " at fo_max");
}

Matrix extract_harmonic_rows(std::span<const double> x, double fo, const HarmonicConfig& cfg) {
    const std::size_t n_window = window_size(cfg.fs, fo, cfg.d);
    if (x.size() < n_window)
        throw std::invalid_argument("extract_harmonic_rows: signal (" + std::to_string(x.size()) +
                                    " samples) is shorter than one window (" +
                                    std::to_string(n_window) + ")");

    const auto w = blackman_window(n_window);
    const double c = window_energy_correction(w);
    const double half = static_cast<double>(n_window) / 2.0;
    const std::size_t n_segments = x.size() / n_window;

    Matrix rows(n_segments, n_window / 2);
    std::vector<double> z(n_window);
    for (std::size_t i = 0; i < n_segments; ++i) {
        const double* seg = x.data() + i * n_window;
        for (std::size_t j = 0; j < n_window; ++j) z[j] = w[j] * seg[j];
        z = dc_remove(z);
        const std::vector<double> h = cfg.use_hilbert ? hilbert_envelope(z) : z;
        const std::vector<double> s = spectrum_bins(h, cfg.spectrum);
        for (std::size_t k = 0; k < s.size(); ++k) rows(i, k) = c * s[k] / half;
    }
    return rows;
}

Matrix combine_channels(const std::vector<Matrix>& rows_per_channel) {
    if (rows_per_channel.empty())
        throw std::invalid_argument("combine_channels: need at least one channel");
    const Matrix& first = rows_per_channel.front();
    for (const Matrix& m : rows_per_channel) {
        if (m.rows() != first.rows() || m.cols() != first.cols())
            throw std::invalid_argument("combine_channels: channel shapes differ");
    }
    if (rows_per_channel.size() == 1) return first;

    Matrix out(first.rows(), first.cols());
    for (std::size_t i = 0; i < out.rows(); ++i) {
        for (std::size_t k = 0; k < out.cols(); ++k) {
            double sum_sq = 0.0;
            for (const Matrix& m : rows_per_channel) sum_sq += m(i, k) * m(i, k);
            out(i, k) = std::sqrt(sum_sq);
        }
    }
    return out;
}

Matrix trim_features(const Matrix& rows, std::size_t n_min) {
    const std::size_t keep = n_min / 2;
    if (rows.cols() < keep)
        throw std::invalid_argument(
            "trim_features: matrix has " + std::to_string(rows.cols()) + " columns, need " +
            std::to_string(keep) + " (operating frequency above the configured fo_max?)");
    if (rows.cols() == keep) return rows;

    Matrix out(rows.rows(), keep);
    for (std::size_t i = 0; i < rows.rows(); ++i)
        for (std::size_t k = 0; k < keep; ++k) out(i, k) = rows(i, k);
    return out;
}

double to_decibels(double v, double floor) {
    return 20.0 * std::log10(std::max(v, floor));
}

Matrix postprocess(const Matrix& rows, const HarmonicConfig& cfg) {
    const std::size_t keep = cfg.feature_count();
    if (rows.cols() < keep + 1)
        throw std::invalid_argument(
            "postprocess: max_harmonics*d = " + std::to_string(keep) + " exceeds the " +
            std::to_string(rows.cols() ? rows.cols() - 1 : 0) + " columns available after the DC drop");

    Matrix out(rows.rows(), keep);
    for (std::size_t i = 0; i < rows.rows(); ++i)
        for (std::size_t k = 0; k < keep; ++k)
            out(i, k) = to_decibels(rows(i, k + 1), cfg.db_floor);
    return out;
}

std::string harmonic_feature_label(std::size_t col, unsigned d) {
    const double harmonic = static_cast<double>(col + 1) / static_cast<double>(d);
    return "h" + detail::format_double(harmonic);
}

} // namespace harmspace
