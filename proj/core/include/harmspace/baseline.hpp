#pragma once

#include "harmspace/matrix.hpp"
#include "harmspace/signal.hpp"

#include <cstddef>
#include <span>
#include <string>

namespace harmspace {

// Fixed-window extractors used as comparison baselines: plain frequency
// analysis (FFT) and envelope analysis (HFFT when use_hilbert is set).
struct BaselineConfig {
    std::size_t window = 8196;
    double lowpass_hz = 6000.0;
    bool use_hilbert = false;
    SpectrumKind spectrum = SpectrumKind::magnitude;
    double db_floor = 1e-12;

    void validate(double fs) const;

    // Retained columns: bins 1..floor(lowpass_hz / (fs/window)).
    std::size_t feature_count(double fs) const;
};

// Per non-overlapping segment: Blackman window, mean removal, optional Hilbert
// envelope, one-sided spectrum with the same c and 1/(N/2) normalization as
// the harmonic extractor (fixed N = window); then drop bin 0, keep bins at or
// below lowpass_hz, and convert to dB. Column j corresponds to raw bin j+1,
// i.e. frequency (j+1)*fs/window.
Matrix extract_baseline_rows(std::span<const double> x, double fs, const BaselineConfig& cfg);

// Same chain without the dB step, for combining channels in the linear
// domain first.
Matrix extract_baseline_rows_linear(std::span<const double> x, double fs,
                                    const BaselineConfig& cfg);

// Label for baseline feature column j: its center frequency in Hz.
std::string baseline_feature_label(std::size_t col, double fs, std::size_t window);

} // namespace harmspace
