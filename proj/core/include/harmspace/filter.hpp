#pragma once

#include "harmspace/signal.hpp"

#include <vector>

namespace harmspace {

// Forward-backward Butterworth low-pass (zero phase, effective order 2*order).
// Requires 0 < cutoff < fs/2 and length > 3*order. Output length equals input
// length.
Signal butterworth_zero_phase_lowpass(const Signal& x, double cutoff, unsigned order);

std::vector<double> butterworth_zero_phase_lowpass(std::span<const double> x, double fs,
                                                   double cutoff, unsigned order);

} // namespace harmspace
