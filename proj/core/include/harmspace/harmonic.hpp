#pragma once

#include "harmspace/features.hpp"
#include "harmspace/matrix.hpp"
#include "harmspace/signal.hpp"

#include <cstddef>
#include <span>

namespace harmspace {

// Settings for speed-adaptive harmonic extraction. The window length tracks
// the operating frequency so that column k always corresponds to harmonic k/d
// of the shaft frequency, regardless of speed.
struct HarmonicConfig {
    unsigned d = 4;               // bins per harmonic
    double fs = 48000.0;          // sampling rate, Hz
    double fo_max = 100.0;        // highest operating frequency in the dataset, Hz
    bool use_hilbert = true;      // envelope step before the spectrum
    unsigned max_harmonics = 60;  // low-pass in harmonic units
    double db_floor = 1e-12;      // clamp before dB conversion
    SpectrumKind spectrum = SpectrumKind::magnitude;

    // Window length at fo_max: the shortest window in the dataset, which
    // fixes the shared feature count across speeds.
    std::size_t min_window() const;

    // Retained feature columns after postprocess: max_harmonics * d.
    std::size_t feature_count() const { return static_cast<std::size_t>(max_harmonics) * d; }

    void validate() const;
};

// Speed-adaptive extraction of one channel: non-overlapping windows of length
// window_size(fs, fo, d); per segment apply the Blackman window, remove the
// mean, optionally take the Hilbert envelope, then the one-sided spectrum
// scaled by c = sqrt(N/sum(w^2)) and divided by N/2. Row i is segment i,
// column k is harmonic k/d of fo.
Matrix extract_harmonic_rows(std::span<const double> x, double fo, const HarmonicConfig& cfg);

// Euclidean magnitude across channels, cell by cell.
Matrix combine_channels(const std::vector<Matrix>& rows_per_channel);

// Keep the first floor(n_min/2) columns so every operating speed shares the
// same feature count.
Matrix trim_features(const Matrix& rows, std::size_t n_min);

// Drop the DC column, keep columns 1..max_harmonics*d, convert to dB.
Matrix postprocess(const Matrix& rows, const HarmonicConfig& cfg);

// 20*log10(max(v, floor)).
double to_decibels(double v, double floor);

// Label for postprocessed feature column j: harmonic (j+1)/d.
std::string harmonic_feature_label(std::size_t col, unsigned d);

} // namespace harmspace
