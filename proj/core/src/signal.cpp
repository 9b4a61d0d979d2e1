#include "harmspace/signal.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <mutex>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace harmspace {

namespace {

// FFTW planner calls are not thread-safe; execution of distinct plans is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

// Exact-length complex DFT. sign = FFTW_FORWARD or FFTW_BACKWARD (unscaled).
void dft_inplace(std::vector<std::complex<double>>& buf, int sign) {
    const int n = static_cast<int>(buf.size());
    auto* raw = reinterpret_cast<fftw_complex*>(buf.data());
    fftw_plan plan;
    {
        std::lock_guard lock(planner_mutex());
        plan = fftw_plan_dft_1d(n, raw, raw, sign, FFTW_ESTIMATE);
    }
    if (!plan) throw std::runtime_error("dft_inplace: FFTW planning failed");
    fftw_execute(plan);
    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
}

std::vector<std::complex<double>> forward_dft(std::span<const double> x) {
    std::vector<std::complex<double>> buf(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) buf[i] = {x[i], 0.0};
    dft_inplace(buf, FFTW_FORWARD);
    return buf;
}

} // namespace

std::size_t window_size(double fs, double fo, unsigned d) {
    if (fs <= 0.0) throw std::invalid_argument("window_size: fs must be > 0");
    if (fo <= 0.0) throw std::invalid_argument("window_size: fo must be > 0");
    if (d < 1) throw std::invalid_argument("window_size: d must be >= 1");
    const long long n = std::llround(fs * static_cast<double>(d) / fo);
    if (n < 8)
        throw std::invalid_argument("window_size: window of " + std::to_string(n) +
                                    " samples is too short (fo too high for fs)");
    return static_cast<std::size_t>(n);
}

std::vector<double> blackman_window(std::size_t n) {
    if (n < 2) throw std::invalid_argument("blackman_window: need N >= 2");
    std::vector<double> w(n);
    const double denom = static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / denom;
        w[i] = 0.42 - 0.5 * std::cos(2.0 * std::numbers::pi * t) +
               0.08 * std::cos(4.0 * std::numbers::pi * t);
    }
    return w;
}

double window_energy_correction(std::span<const double> w) {
    if (w.empty()) throw std::invalid_argument("window_energy_correction: empty window");
    double sum_sq = 0.0;
    for (double v : w) sum_sq += v * v;
    if (sum_sq == 0.0) throw std::invalid_argument("window_energy_correction: all-zero window");
    return std::sqrt(static_cast<double>(w.size()) / sum_sq);
}

std::vector<double> dc_remove(std::span<const double> x) {
    if (x.empty()) throw std::invalid_argument("dc_remove: empty input");
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] - mean;
    return out;
}

std::vector<double> hilbert_envelope(std::span<const double> x) {
    const std::size_t n = x.size();
    if (n < 4) throw std::invalid_argument("hilbert_envelope: need at least 4 samples");

    std::vector<std::complex<double>> buf(n);
    for (std::size_t i = 0; i < n; ++i) buf[i] = {x[i], 0.0};
    dft_inplace(buf, FFTW_FORWARD);

    // Analytic-signal multiplier: keep DC (and Nyquist for even N), double the
    // positive frequencies, zero the negative ones.
    const std::size_t half = n / 2;
    if (n % 2 == 0) {
        for (std::size_t k = 1; k < half; ++k) buf[k] *= 2.0;
        for (std::size_t k = half + 1; k < n; ++k) buf[k] = 0.0;
    } else {
        for (std::size_t k = 1; k <= half; ++k) buf[k] *= 2.0;
        for (std::size_t k = half + 1; k < n; ++k) buf[k] = 0.0;
    }

    dft_inplace(buf, FFTW_BACKWARD);

    std::vector<double> env(n);
    const double scale = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) env[i] = std::abs(buf[i]) * scale;
    return env;
}

std::vector<double> spectrum_bins(std::span<const double> x, SpectrumKind kind) {
    const std::size_t n = x.size();
    if (n < 8) throw std::invalid_argument("spectrum_bins: need at least 8 samples");
    const auto dft = forward_dft(x);
    std::vector<double> bins(n / 2);
    for (std::size_t k = 0; k < bins.size(); ++k) {
        const double mag = std::abs(dft[k]);
        bins[k] = (kind == SpectrumKind::magnitude) ? mag : mag * mag;
    }
    return bins;
}

Spectrum one_sided_spectrum(std::span<const double> x, double fs, SpectrumKind kind) {
    if (fs <= 0.0) throw std::invalid_argument("one_sided_spectrum: fs must be > 0");
    Spectrum s;
    s.bins = spectrum_bins(x, kind);
    s.resolution = fs / static_cast<double>(x.size());
    return s;
}

} // namespace harmspace
