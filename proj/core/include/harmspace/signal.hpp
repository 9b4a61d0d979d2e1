#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace harmspace {

// Single-channel acceleration record.
struct Signal {
    std::vector<double> samples;
    double fs = 0.0; // sampling rate, Hz
};

// One-sided spectrum: floor(N/2) non-negative bins, bin k at k*resolution Hz.
struct Spectrum {
    std::vector<double> bins;
    double resolution = 0.0; // Hz per bin
};

enum class SpectrumKind {
    magnitude, // |X[k]|
    power      // |X[k]|^2
};

// Window length N = round(fs*d/fo), rounding half away from zero.
// Throws std::invalid_argument for fo <= 0 or when the result lands below 8
// samples (the signal is too coarse to analyze at that operating frequency).
std::size_t window_size(double fs, double fo, unsigned d);

// Symmetric Blackman weights, w[n] = 0.42 - 0.5 cos(2 pi n / (N-1))
//                                         + 0.08 cos(4 pi n / (N-1)).
std::vector<double> blackman_window(std::size_t n);

// Energy-correction factor c = sqrt(N / sum(w^2)).
double window_energy_correction(std::span<const double> w);

// x - mean(x).
std::vector<double> dc_remove(std::span<const double> x);

// Magnitude of the analytic signal (frequency-domain construction: double the
// positive frequencies, zero the negative ones, inverse transform, |.|).
// Requires length >= 4.
std::vector<double> hilbert_envelope(std::span<const double> x);

// One-sided bins |DFT(x)[k]| (or |.|^2) for k = 0..floor(N/2)-1, computed with
// an exact-length transform -- no zero padding, N need not be a power of two.
std::vector<double> spectrum_bins(std::span<const double> x,
                                  SpectrumKind kind = SpectrumKind::magnitude);

Spectrum one_sided_spectrum(std::span<const double> x, double fs,
                            SpectrumKind kind = SpectrumKind::magnitude);

} // namespace harmspace
