#include "harmspace/config.hpp"

#include "harmspace/errors.hpp"
#include "internal/text.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace harmspace {

std::string to_string(Method m) {
    switch (m) {
        case Method::fft: return "FFT";
        case Method::hfft: return "HFFT";
        case Method::har: return "HAR";
        case Method::harh: return "HARH";
    }
    return "?";
}

Method method_from_string(const std::string& s) {
    if (s == "FFT") return Method::fft;
    if (s == "HFFT") return Method::hfft;
    if (s == "HAR") return Method::har;
    if (s == "HARH") return Method::harh;
    throw config_error("unknown method '" + s + "' (expected FFT, HFFT, HAR or HARH)");
}

std::string to_string(ChannelSet c) {
    switch (c) {
        case ChannelSet::a1: return "A1";
        case ChannelSet::a2: return "A2";
        case ChannelSet::a1_a2: return "A1+A2";
    }
    return "?";
}

ChannelSet channel_set_from_string(const std::string& s) {
    if (s == "A1") return ChannelSet::a1;
    if (s == "A2") return ChannelSet::a2;
    if (s == "A1+A2") return ChannelSet::a1_a2;
    throw config_error("unknown channel set '" + s + "' (expected A1, A2 or A1+A2)");
}

namespace {

std::string to_string(SpectrumKind k) {
    return k == SpectrumKind::magnitude ? "magnitude" : "power";
}

SpectrumKind spectrum_from_string(const std::string& s) {
    if (s == "magnitude") return SpectrumKind::magnitude;
    if (s == "power") return SpectrumKind::power;
    throw config_error("unknown spectrum kind '" + s + "' (expected magnitude or power)");
}

std::vector<Condition> parse_condition_list(const std::string& value, const std::string& key) {
    std::vector<Condition> out;
    for (const std::string& cell : detail::split(value, ',')) {
        if (cell.empty()) continue;
        const auto parts = detail::split(cell, ':');
        if (parts.size() != 2)
            throw config_error(key + ": expected RPM:NM pairs, got '" + cell + "'");
        out.push_back({detail::parse_double(parts[0]), detail::parse_double(parts[1])});
    }
    if (out.empty()) throw config_error(key + ": empty condition list");
    return out;
}

std::string format_condition_list(const std::vector<Condition>& conditions) {
    std::string out;
    for (const Condition& c : conditions) {
        if (!out.empty()) out += ", ";
        out += detail::format_double(c.speed_rpm) + ":" + detail::format_double(c.load_nm);
    }
    return out;
}

double parse_positive(const std::string& value, const std::string& key) {
    double v = 0.0;
    try {
        v = detail::parse_double(value);
    } catch (const std::exception&) {
        throw config_error(key + ": invalid number '" + value + "'");
    }
    if (v <= 0.0) throw config_error(key + ": must be > 0");
    return v;
}

long long parse_uint(const std::string& value, const std::string& key) {
    long long v = 0;
    try {
        v = detail::parse_int(value);
    } catch (const std::exception&) {
        throw config_error(key + ": invalid integer '" + value + "'");
    }
    if (v < 0) throw config_error(key + ": must be >= 0");
    return v;
}

} // namespace

HarmonicConfig RunConfig::harmonic_for_method() const {
    HarmonicConfig cfg = harmonic;
    cfg.fs = fs_hz;
    cfg.use_hilbert = (method == Method::harh);
    cfg.spectrum = spectrum;
    return cfg;
}

BaselineConfig RunConfig::baseline_for_method() const {
    BaselineConfig cfg = baseline;
    cfg.use_hilbert = (method == Method::hfft);
    cfg.spectrum = spectrum;
    cfg.db_floor = harmonic.db_floor;
    return cfg;
}

ConditionGrid RunConfig::grid() const {
    ConditionGrid g = default_grid();
    if (!synth.cells.empty()) g.cells = synth.cells;
    g.held_out = eval.test_conditions;
    g.duration_s = synth.duration_s;
    g.fs = fs_hz;
    g.channels = synth.channels;
    return g;
}

void RunConfig::validate() const {
    if (fs_hz <= 0.0) throw config_error("fs_hz must be > 0");
    if (eval.pca_components < 1) throw config_error("eval.pca_components must be >= 1");
    if (eval.test_conditions.empty()) throw config_error("eval.test_conditions must not be empty");
    if (preprocess.cutoff_hz <= 0.0 || preprocess.cutoff_hz >= fs_hz / 2.0)
        throw config_error("preprocess.cutoff_hz must satisfy 0 < cutoff < fs/2");
    if (preprocess.order < 1) throw config_error("preprocess.order must be >= 1");
    if (synth.channels < 1) throw config_error("synth.channels must be >= 1");
    try {
        harmonic_for_method().validate();
        baseline_for_method().validate(fs_hz);
    } catch (const std::invalid_argument& e) {
        throw config_error(e.what());
    }
}

std::string RunConfig::canonical() const {
    std::ostringstream out;
    out << "method = " << harmspace::to_string(method) << '\n';
    out << "channels = " << harmspace::to_string(channels) << '\n';
    out << "seed = " << seed << '\n';
    out << "fs_hz = " << detail::format_double(fs_hz) << '\n';
    out << "spectrum = " << to_string(spectrum) << '\n';
    out << "harmonic.d = " << harmonic.d << '\n';
    out << "harmonic.fo_max_hz = " << detail::format_double(harmonic.fo_max) << '\n';
    out << "harmonic.max_harmonics = " << harmonic.max_harmonics << '\n';
    out << "harmonic.db_floor = " << detail::format_double(harmonic.db_floor) << '\n';
    out << "baseline.window = " << baseline.window << '\n';
    out << "baseline.lowpass_hz = " << detail::format_double(baseline.lowpass_hz) << '\n';
    out << "preprocess.cutoff_hz = " << detail::format_double(preprocess.cutoff_hz) << '\n';
    out << "preprocess.order = " << preprocess.order << '\n';
    out << "eval.pca_components = " << eval.pca_components << '\n';
    out << "eval.test_conditions = " << format_condition_list(eval.test_conditions) << '\n';
    out << "synth.cells = " << format_condition_list(grid().cells) << '\n';
    out << "synth.runs_per_cell = " << synth.runs_per_cell << '\n';
    out << "synth.duration_s = " << detail::format_double(synth.duration_s) << '\n';
    out << "synth.channels = " << synth.channels << '\n';
    out << "synth.snr_db = " << detail::format_double(synth.snr_db) << '\n';
    out << "synth.defect_severity = " << detail::format_double(synth.defect_severity) << '\n';
    out << "synth.background_scale = " << detail::format_double(synth.background_scale) << '\n';
    out << "paths.data_dir = " << paths.data_dir << '\n';
    out << "paths.out_dir = " << paths.out_dir << '\n';
    return out.str();
}

std::string RunConfig::hash() const { return detail::hex64(detail::fnv1a64(canonical())); }

RunConfig parse_config_text(const std::string& text, const std::string& source_name) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = detail::trim(line);
        if (view.empty() || view.front() == '#') continue;
        const std::size_t eq = view.find('=');
        if (eq == std::string_view::npos)
            throw config_error(source_name + ":" + std::to_string(line_no) +
                               ": expected 'key = value'");
        const std::string key{detail::trim(view.substr(0, eq))};
        const std::string value{detail::trim(view.substr(eq + 1))};

        if (key == "method") cfg.method = method_from_string(value);
        else if (key == "channels") cfg.channels = channel_set_from_string(value);
        else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_uint(value, key));
        else if (key == "fs_hz") cfg.fs_hz = parse_positive(value, key);
        else if (key == "spectrum") cfg.spectrum = spectrum_from_string(value);
        else if (key == "harmonic.d") cfg.harmonic.d = static_cast<unsigned>(parse_uint(value, key));
        else if (key == "harmonic.fo_max_hz") cfg.harmonic.fo_max = parse_positive(value, key);
        else if (key == "harmonic.max_harmonics")
            cfg.harmonic.max_harmonics = static_cast<unsigned>(parse_uint(value, key));
        else if (key == "harmonic.db_floor") cfg.harmonic.db_floor = parse_positive(value, key);
        else if (key == "baseline.window")
            cfg.baseline.window = static_cast<std::size_t>(parse_uint(value, key));
        else if (key == "baseline.lowpass_hz") cfg.baseline.lowpass_hz = parse_positive(value, key);
        else if (key == "preprocess.cutoff_hz") cfg.preprocess.cutoff_hz = parse_positive(value, key);
        else if (key == "preprocess.order")
            cfg.preprocess.order = static_cast<unsigned>(parse_uint(value, key));
        else if (key == "eval.pca_components")
            cfg.eval.pca_components = static_cast<unsigned>(parse_uint(value, key));
        else if (key == "eval.test_conditions")
            cfg.eval.test_conditions = parse_condition_list(value, key);
        else if (key == "synth.cells") cfg.synth.cells = parse_condition_list(value, key);
        else if (key == "synth.runs_per_cell")
            cfg.synth.runs_per_cell = static_cast<unsigned>(parse_uint(value, key));
        else if (key == "synth.duration_s") cfg.synth.duration_s = parse_positive(value, key);
        else if (key == "synth.channels")
            cfg.synth.channels = static_cast<unsigned>(parse_uint(value, key));
        else if (key == "synth.snr_db") cfg.synth.snr_db = detail::parse_double(value);
        else if (key == "synth.defect_severity") {
            cfg.synth.defect_severity = detail::parse_double(value);
            if (cfg.synth.defect_severity < 0.0)
                throw config_error("synth.defect_severity: must be >= 0");
        } else if (key == "synth.background_scale") {
            cfg.synth.background_scale = detail::parse_double(value);
            if (cfg.synth.background_scale < 0.0)
                throw config_error("synth.background_scale: must be >= 0");
        } else if (key == "paths.data_dir") cfg.paths.data_dir = value;
        else if (key == "paths.out_dir") cfg.paths.out_dir = value;
        else
            throw config_error(source_name + ":" + std::to_string(line_no) + ": unknown key '" +
                               key + "'");
    }
    cfg.validate();
    return cfg;
}

RunConfig parse_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str(), path.filename().string());
}

} // namespace harmspace
