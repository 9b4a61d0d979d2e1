#pragma once

#include "harmspace/baseline.hpp"
#include "harmspace/features.hpp"
#include "harmspace/harmonic.hpp"
#include "harmspace/synth.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace harmspace {

enum class Method { fft, hfft, har, harh };
enum class ChannelSet { a1, a2, a1_a2 };

std::string to_string(Method m);
Method method_from_string(const std::string& s);
std::string to_string(ChannelSet c);
ChannelSet channel_set_from_string(const std::string& s);

struct PreprocessConfig {
    double cutoff_hz = 6000.0;
    unsigned order = 4;
};

struct EvalConfig {
    unsigned pca_components = 2;
    std::vector<Condition> test_conditions = {{2000, 5}, {3000, 5}, {4000, 5}};
};

struct SynthSettings {
    std::vector<Condition> cells; // empty -> default paper-shaped 15-cell grid
    unsigned runs_per_cell = 1;
    double duration_s = 1.0;
    unsigned channels = 2;
    double snr_db = 20.0;
    double defect_severity = 1.0;
    double background_scale = 1.0;
};

struct PathsConfig {
    std::string data_dir = "data";
    std::string out_dir = "out";
};

// One declarative description of a full run. The config file is a flat
// key = value listing with at most two path levels; unknown keys are errors.
struct RunConfig {
    Method method = Method::harh;
    ChannelSet channels = ChannelSet::a1_a2;
    std::uint64_t seed = 42;
    double fs_hz = 48000.0;
    SpectrumKind spectrum = SpectrumKind::magnitude;

    HarmonicConfig harmonic;
    BaselineConfig baseline;
    PreprocessConfig preprocess;
    EvalConfig eval;
    SynthSettings synth;
    PathsConfig paths;

    bool is_harmonic_method() const { return method == Method::har || method == Method::harh; }

    // Extraction settings with the method/run-level fields (fs, Hilbert use,
    // spectrum kind) filled in.
    HarmonicConfig harmonic_for_method() const;
    BaselineConfig baseline_for_method() const;

    // Synthesis grid: configured cells (or the default pattern) with the
    // eval test conditions flagged as held out.
    ConditionGrid grid() const;

    void validate() const;

    // Canonical serialization: every key in fixed order, shortest round-trip
    // numbers. Reports embed the FNV-1a hash of this form.
    std::string canonical() const;
    std::string hash() const;
};

RunConfig parse_config_text(const std::string& text, const std::string& source_name);
RunConfig parse_config_file(const std::filesystem::path& path);

} // namespace harmspace
