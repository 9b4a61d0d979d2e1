#pragma once

#include "harmspace/dataset.hpp"
#include "harmspace/features.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace harmspace {

// One defect signature: impacts at `order` times the shaft frequency, scaled
// by `severity`.
struct DefectComponent {
    double order = 0.0;    // shaft-relative rate multiplier, > 1
    double severity = 1.0; // amplitude scale, >= 0
};

struct BearingSpec {
    std::string id;
    HealthClass label = HealthClass::healthy;
    std::vector<DefectComponent> defect_orders; // empty for healthy bearings
    double resonance_hz = 3500.0;               // structural resonance excited by impacts
    double resonance_q = 6.0;                   // damping quality of that resonance

    void validate() const;
};

// The operating-condition grid a dataset is generated over.
struct ConditionGrid {
    std::vector<Condition> cells;
    std::vector<Condition> held_out; // subset of cells, reserved for testing
    double duration_s = 1.0;
    double fs = 48000.0;
    unsigned channels = 2;

    void validate() const;
};

// Generator knobs: shaft-harmonic content, the degree-2 energy trend injected
// over (fo, to), background excitation of the casing resonance, and the
// noise level.
struct SynthTuning {
    unsigned shaft_harmonics = 10;
    double base_amplitude = 1.0;
    double trend_fo = 0.008;   // linear energy growth per Hz of shaft speed
    double trend_to = 0.02;    // linear growth per Nm of load
    double trend_fo2 = 2e-5;   // quadratic term in shaft speed
    double snr_db = 20.0;      // white noise level vs the shaft fundamental
    double impulse_scale = 4.0;

    // Aperiodic micro-impacts excite the same resonance in every bearing, so
    // raw band energy does not separate the classes; only the defects'
    // periodic comb structure does.
    double background_rate = 800.0; // impacts per second
    double background_scale = 1.0;

    // 1 + trend_fo*fo + trend_to*to + trend_fo2*fo^2
    double trend(double fo, double to) const;
};

// Paper-shaped defaults: six speeds crossed with two loads plus the three
// held-out cells at 5 Nm, fifteen cells in total.
ConditionGrid default_grid();

// Three healthy and three faulty bearings; the faulty ones carry pairwise
// combinations of outer-race-like, inner-race-like and ball-like defect
// orders.
std::vector<BearingSpec> default_bearing_set(double defect_severity = 1.0);

// Impact instants for one defect: (j + phase) / (order * fo) seconds for all
// j with the instant inside [0, duration).
std::vector<double> defect_impulse_times(double order, double fo, double duration_s,
                                         double phase01);

// Deterministic synthesis: shaft harmonics with the injected condition trend,
// per-defect impulse trains convolved with the bearing resonance, and white
// noise. Identical (spec, condition, seed) inputs give bit-identical output;
// a zero-severity defect contributes nothing at all.
Recording generate_recording(const BearingSpec& spec, double speed_rpm, double load_nm,
                             std::uint64_t seed, const ConditionGrid& grid,
                             const SynthTuning& tuning = {});

// Writes one recording per (bearing, cell, run) plus the manifest. Per-cell
// seeds are derived from the master seed, so output does not depend on
// generation order.
Manifest generate_dataset(const std::vector<BearingSpec>& specs, const ConditionGrid& grid,
                          unsigned runs_per_cell, std::uint64_t seed,
                          const std::filesystem::path& out_dir, const SynthTuning& tuning = {});

} // namespace harmspace
