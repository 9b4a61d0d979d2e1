#include "harmspace/filter.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace harmspace {

namespace {

// One biquad in DF2T form, a0 normalized to 1.
struct Biquad {
    double b0, b1, b2;
    double a1, a2;
};

// Digital Butterworth low-pass as a cascade of second-order sections:
// analog prototype poles, prewarp, bilinear transform, conjugate pairing.
// All numerator zeros sit at z = -1; every section is scaled to unit DC gain.
std::vector<Biquad> butter_lowpass_sos(unsigned order, double fs, double cutoff) {
    const double warped = 2.0 * fs * std::tan(std::numbers::pi * cutoff / fs);
    const double fs2 = 2.0 * fs;

    std::vector<std::complex<double>> poles(order);
    for (unsigned k = 0; k < order; ++k) {
        const double angle =
            std::numbers::pi * (2.0 * k + order + 1.0) / (2.0 * order);
        poles[k] = warped * std::exp(std::complex<double>(0.0, angle));
    }
    for (auto& p : poles) p = (fs2 + p) / (fs2 - p);

    // Conjugate pairs come out as poles[k] and poles[order-1-k].
    std::vector<Biquad> sos;
    unsigned lo = 0, hi = order - 1;
    while (lo < hi) {
        const std::complex<double> p = poles[lo];
        const double a1 = -2.0 * p.real();
        const double a2 = std::norm(p);
        const double gain = (1.0 + a1 + a2) / 4.0; // unit DC gain, zeros at z=-1
        sos.push_back({gain, 2.0 * gain, gain, a1, a2});
        ++lo;
        --hi;
    }
    if (lo == hi) { // odd order: one real pole
        const double p = poles[lo].real();
        const double a1 = -p;
        const double gain = (1.0 + a1) / 2.0;
        sos.push_back({gain, gain, 0.0, a1, 0.0});
    }
    return sos;
}

// Steady-state DF2T state for unit-step input; each section here has unit DC
// gain so no cumulative scaling is needed.
std::array<double, 2> section_step_state(const Biquad& s) {
    const double g = (s.b0 + s.b1 + s.b2) / (1.0 + s.a1 + s.a2);
    return {g - s.b0, s.b2 - s.a2 * g};
}

void sosfilt_inplace(const std::vector<Biquad>& sos, std::vector<double>& x,
                     std::vector<std::array<double, 2>> state) {
    for (double& sample : x) {
        double v = sample;
        for (std::size_t si = 0; si < sos.size(); ++si) {
            const Biquad& s = sos[si];
            auto& z = state[si];
            const double y = s.b0 * v + z[0];
            z[0] = s.b1 * v - s.a1 * y + z[1];
            z[1] = s.b2 * v - s.a2 * y;
            v = y;
        }
        sample = v;
    }
}

} // namespace

std::vector<double> butterworth_zero_phase_lowpass(std::span<const double> x, double fs,
                                                   double cutoff, unsigned order) {
    if (fs <= 0.0) throw std::invalid_argument("butterworth: fs must be > 0");
    if (order < 1) throw std::invalid_argument("butterworth: order must be >= 1");
    if (cutoff <= 0.0 || cutoff >= fs / 2.0)
        throw std::invalid_argument("butterworth: cutoff must satisfy 0 < cutoff < fs/2");
    const std::size_t n = x.size();
    if (n <= 3 * static_cast<std::size_t>(order))
        throw std::invalid_argument("butterworth: signal too short for requested order");

    const auto sos = butter_lowpass_sos(order, fs, cutoff);

    // Odd-symmetric edge extension so start-up transients fall outside the
    // original record.
    const std::size_t ntaps = 2 * sos.size() + 1;
    const std::size_t edge = std::min(3 * ntaps, n - 1);

    std::vector<double> ext;
    ext.reserve(n + 2 * edge);
    for (std::size_t i = edge; i >= 1; --i) ext.push_back(2.0 * x[0] - x[i]);
    ext.insert(ext.end(), x.begin(), x.end());
    for (std::size_t i = 1; i <= edge; ++i) ext.push_back(2.0 * x[n - 1] - x[n - 1 - i]);

    std::vector<std::array<double, 2>> zi(sos.size());
    for (std::size_t i = 0; i < sos.size(); ++i) zi[i] = section_step_state(sos[i]);

    auto scaled_state = [&](double v) {
        auto st = zi;
        for (auto& z : st) {
            z[0] *= v;
            z[1] *= v;
        }
        return st;
    };

    sosfilt_inplace(sos, ext, scaled_state(ext.front()));
    std::reverse(ext.begin(), ext.end());
    sosfilt_inplace(sos, ext, scaled_state(ext.front()));
    std::reverse(ext.begin(), ext.end());

    return {ext.begin() + static_cast<std::ptrdiff_t>(edge),
            ext.begin() + static_cast<std::ptrdiff_t>(edge + n)};
}

Signal butterworth_zero_phase_lowpass(const Signal& x, double cutoff, unsigned order) {
    return {butterworth_zero_phase_lowpass(x.samples, x.fs, cutoff, order), x.fs};
}

} // namespace harmspace
