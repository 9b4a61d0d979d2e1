#include "harmspace/synth.hpp"

#include "harmspace/errors.hpp"
#include "internal/text.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace harmspace {

namespace {

// Fully specified generator so recordings are bit-identical across platforms
// and schedules (stdlib distributions are implementation-defined).
struct SplitMix64 {
    std::uint64_t state;

    std::uint64_t next() {
        state += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double gaussian() {
        const double u1 = 1.0 - uniform01(); // (0, 1]
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }
};

// Independent stream per signal component: a zero-severity defect must leave
// every other component untouched.
SplitMix64 derive_stream(std::uint64_t seed, std::uint64_t tag) {
    SplitMix64 scramble{seed};
    const std::uint64_t base = scramble.next();
    return SplitMix64{base ^ (tag * 0xd1342543de82ef95ull + 0x2545f4914f6cdd1dull)};
}

constexpr std::uint64_t kTagHarmonics = 1;
constexpr std::uint64_t kTagBackground = 2;
constexpr std::uint64_t kTagNoise = 100;  // + channel index
constexpr std::uint64_t kTagDefect = 200; // + defect index

double channel_harmonic_gain(unsigned channel) { return 1.0 - 0.2 * channel; }
double channel_defect_gain(unsigned channel) { return channel == 0 ? 1.0 : 0.55; }

// One decaying resonance burst added at a continuous-time instant, evaluated
// per sample to keep sub-sample timing.
void add_burst(std::vector<double>& buf, double fs, double t_impact, double amplitude,
               double tau, double omega_res, std::size_t kernel_len) {
    const auto start = static_cast<std::size_t>(std::ceil(t_impact * fs));
    const std::size_t stop = std::min(buf.size(), start + kernel_len);
    for (std::size_t i = start; i < stop; ++i) {
        const double dt = static_cast<double>(i) / fs - t_impact;
        buf[i] += amplitude * std::exp(-dt / tau) * std::sin(omega_res * dt);
    }
}

} // namespace

void BearingSpec::validate() const {
    if (id.empty()) throw std::invalid_argument("BearingSpec: empty id");
    if (label == HealthClass::healthy && !defect_orders.empty())
        throw std::invalid_argument("BearingSpec " + id + ": healthy bearings carry no defects");
    for (const DefectComponent& d : defect_orders) {
        if (d.order <= 1.0)
            throw std::invalid_argument("BearingSpec " + id + ": defect order must exceed 1");
        if (d.severity < 0.0)
            throw std::invalid_argument("BearingSpec " + id + ": severity must be >= 0");
    }
    if (resonance_hz <= 0.0 || resonance_q <= 0.0)
        throw std::invalid_argument("BearingSpec " + id + ": resonance parameters must be > 0");
}

void ConditionGrid::validate() const {
    if (cells.empty()) throw std::invalid_argument("ConditionGrid: no cells");
    for (const Condition& c : cells)
        if (c.speed_rpm <= 0.0)
            throw std::invalid_argument("ConditionGrid: speeds must be > 0");
    for (const Condition& h : held_out)
        if (std::find(cells.begin(), cells.end(), h) == cells.end())
            throw std::invalid_argument("ConditionGrid: held-out condition not in the grid");
    if (duration_s <= 0.0 || fs <= 0.0)
        throw std::invalid_argument("ConditionGrid: duration and fs must be > 0");
    if (channels < 1) throw std::invalid_argument("ConditionGrid: need at least one channel");
}

double SynthTuning::trend(double fo, double to) const {
    return 1.0 + trend_fo * fo + trend_to * to + trend_fo2 * fo * fo;
}

ConditionGrid default_grid() {
    // Training speeds stay at least 1000 RPM away from every held-out speed,
    // so the held-out cells interpolate in both speed and load. Four distinct
    // loads keep the adjustment design full rank.
    ConditionGrid grid;
    for (double rpm : {1000, 5000, 6000})
        for (double nm : {0, 5, 10, 20}) grid.cells.push_back({rpm, nm});
    grid.held_out = {{2000, 5}, {3000, 5}, {4000, 5}};
    for (const Condition& h : grid.held_out) grid.cells.push_back(h);
    return grid;
}

std::vector<BearingSpec> default_bearing_set(double defect_severity) {
    // Representative non-integer defect orders (outer-race-, inner-race- and
    // ball-like) so defect energy lands between integer shaft harmonics.
    const double outer = 3.57;
    const double inner = 5.43;
    const double ball = 2.32;

    std::vector<BearingSpec> specs;
    for (int i = 1; i <= 3; ++i) {
        BearingSpec s;
        s.id = "H-0" + std::to_string(i);
        s.label = HealthClass::healthy;
        s.resonance_hz = 3300.0 + 200.0 * (i - 1);
        specs.push_back(std::move(s));
    }

    const std::vector<std::vector<double>> combos = {{outer, ball}, {inner, ball}, {inner, outer}};
    for (int i = 1; i <= 3; ++i) {
        BearingSpec s;
        s.id = "F-0" + std::to_string(i);
        s.label = HealthClass::faulty;
        s.resonance_hz = 3300.0 + 200.0 * (i - 1);
        for (double order : combos[static_cast<std::size_t>(i - 1)])
            s.defect_orders.push_back({order, defect_severity});
        specs.push_back(std::move(s));
    }
    return specs;
}

std::vector<double> defect_impulse_times(double order, double fo, double duration_s,
                                         double phase01) {
    if (order <= 0.0 || fo <= 0.0)
        throw std::invalid_argument("defect_impulse_times: order and fo must be > 0");
    const double rate = order * fo; // impacts per second
    std::vector<double> times;
    times.reserve(static_cast<std::size_t>(rate * duration_s) + 1);
    for (std::size_t j = 0;; ++j) {
        const double t = (static_cast<double>(j) + phase01) / rate;
        if (t >= duration_s) break;
        times.push_back(t);
    }
    return times;
}

Recording generate_recording(const BearingSpec& spec, double speed_rpm, double load_nm,
                             std::uint64_t seed, const ConditionGrid& grid,
                             const SynthTuning& tuning) {
    spec.validate();
    grid.validate();
    if (speed_rpm <= 0.0) throw std::invalid_argument("generate_recording: speed must be > 0");

    const double fo = speed_rpm / 60.0;
    const double to = load_nm;
    const double trend = tuning.trend(fo, to);
    const auto n = static_cast<std::size_t>(std::llround(grid.duration_s * grid.fs));

    Recording rec;
    rec.fs = grid.fs;
    rec.channels.assign(grid.channels, std::vector<double>(n, 0.0));

    // Shaft harmonics share phases across channels; only the gain differs.
    SplitMix64 harmonics_rng = derive_stream(seed, kTagHarmonics);
    std::vector<double> phases(tuning.shaft_harmonics);
    for (double& p : phases) p = harmonics_rng.uniform01() * 2.0 * std::numbers::pi;

    for (unsigned c = 0; c < grid.channels; ++c) {
        auto& buf = rec.channels[c];
        const double gain = channel_harmonic_gain(c);
        for (unsigned h = 1; h <= tuning.shaft_harmonics; ++h) {
            const double amp = gain * tuning.base_amplitude * trend / static_cast<double>(h);
            const double omega = 2.0 * std::numbers::pi * h * fo / grid.fs;
            const double phase = phases[h - 1];
            for (std::size_t i = 0; i < n; ++i)
                buf[i] += amp * std::cos(omega * static_cast<double>(i) + phase);
        }
    }

    const double tau = spec.resonance_q / (std::numbers::pi * spec.resonance_hz);
    const auto kernel_len = static_cast<std::size_t>(std::ceil(5.0 * tau * grid.fs));
    const double omega_res = 2.0 * std::numbers::pi * spec.resonance_hz;

    // Background micro-impacts (Poisson arrivals, random amplitude and sign)
    // excite the casing resonance in every bearing, healthy or not. Events are
    // shared across channels; only the gain differs.
    if (tuning.background_rate > 0.0 && tuning.background_scale > 0.0) {
        SplitMix64 bg_rng = derive_stream(seed, kTagBackground);
        std::vector<std::pair<double, double>> events; // (time, amplitude)
        double t = 0.0;
        while (true) {
            t += -std::log(1.0 - bg_rng.uniform01()) / tuning.background_rate;
            if (t >= grid.duration_s) break;
            events.emplace_back(t, tuning.background_scale * trend * bg_rng.gaussian());
        }
        for (unsigned c = 0; c < grid.channels; ++c) {
            const double gain = channel_harmonic_gain(c);
            for (const auto& [t_impact, amp] : events)
                add_burst(rec.channels[c], grid.fs, t_impact, amp * gain, tau, omega_res,
                          kernel_len);
        }
    }

    // Defect impacts: an impulse train at order*fo convolved with the same
    // resonance. Impact instants are continuous-time, so the sub-sample
    // timing survives at every speed.
    for (std::size_t k = 0; k < spec.defect_orders.size(); ++k) {
        const DefectComponent& defect = spec.defect_orders[k];
        if (defect.severity <= 0.0) continue;

        SplitMix64 defect_rng = derive_stream(seed, kTagDefect + k);
        const double phase = defect_rng.uniform01();
        const auto times = defect_impulse_times(defect.order, fo, grid.duration_s, phase);
        const double amp = tuning.impulse_scale * defect.severity * trend;

        for (unsigned c = 0; c < grid.channels; ++c) {
            const double gain = channel_defect_gain(c);
            for (double t_impact : times)
                add_burst(rec.channels[c], grid.fs, t_impact, amp * gain, tau, omega_res,
                          kernel_len);
        }
    }

    // White noise at snr_db below the shaft fundamental's RMS.
    const double fundamental_rms = tuning.base_amplitude * trend / std::numbers::sqrt2;
    const double sigma = fundamental_rms * std::pow(10.0, -tuning.snr_db / 20.0);
    for (unsigned c = 0; c < grid.channels; ++c) {
        SplitMix64 noise_rng = derive_stream(seed, kTagNoise + c);
        auto& buf = rec.channels[c];
        for (std::size_t i = 0; i < n; ++i) buf[i] += sigma * noise_rng.gaussian();
    }

    return rec;
}

Manifest generate_dataset(const std::vector<BearingSpec>& specs, const ConditionGrid& grid,
                          unsigned runs_per_cell, std::uint64_t seed,
                          const std::filesystem::path& out_dir, const SynthTuning& tuning) {
    if (specs.empty()) throw std::invalid_argument("generate_dataset: no bearing specs");
    if (runs_per_cell < 1) throw std::invalid_argument("generate_dataset: runs_per_cell must be >= 1");
    grid.validate();
    for (const BearingSpec& s : specs) s.validate();

    std::error_code ec;
    std::filesystem::create_directories(out_dir / "recordings", ec);
    if (ec)
        throw data_error("generate_dataset: cannot create " + (out_dir / "recordings").string() +
                         ": " + ec.message());

    Manifest manifest;
    manifest.held_out = grid.held_out;
    const std::string channel_label = channel_set_label(grid.channels);

    for (const BearingSpec& spec : specs) {
        for (const Condition& cell : grid.cells) {
            for (unsigned run = 0; run < runs_per_cell; ++run) {
                // Schedule-independent per-recording seed.
                const std::string key = spec.id + "|" + detail::format_double(cell.speed_rpm) +
                                        "|" + detail::format_double(cell.load_nm) + "|" +
                                        std::to_string(run);
                const std::uint64_t rec_seed = detail::fnv1a64(key) ^ seed;

                const Recording rec = generate_recording(spec, cell.speed_rpm, cell.load_nm,
                                                         rec_seed, grid, tuning);

                const std::string stem = spec.id + "_s" + detail::format_double(cell.speed_rpm) +
                                         "_l" + detail::format_double(cell.load_nm) + "_r" +
                                         std::to_string(run);
                write_recording(rec, out_dir / "recordings" / stem);

                ManifestRow row;
                row.path = "recordings/" + stem;
                row.bearing_id = spec.id;
                row.label = spec.label;
                row.condition = cell;
                row.run = static_cast<int>(run);
                row.channel = channel_label;
                manifest.rows.push_back(std::move(row));
            }
        }
    }

    write_manifest(manifest, out_dir / "manifest.csv");
    return manifest;
}

} // namespace harmspace
