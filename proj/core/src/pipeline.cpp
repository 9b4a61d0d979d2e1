#include "harmspace/pipeline.hpp"

#include "harmspace/baseline.hpp"
#include "harmspace/errors.hpp"
#include "harmspace/feature_store.hpp"
#include "harmspace/filter.hpp"
#include "harmspace/harmonic.hpp"
#include "harmspace/synth.hpp"
#include "internal/text.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <thread>

namespace harmspace {

namespace {

std::string run_key(const RunConfig& cfg) {
    return to_string(cfg.method) + "_" + to_string(cfg.channels);
}

std::vector<std::size_t> channel_indices(ChannelSet set, std::size_t available,
                                         const std::string& context) {
    std::vector<std::size_t> idx;
    switch (set) {
        case ChannelSet::a1: idx = {0}; break;
        case ChannelSet::a2: idx = {1}; break;
        case ChannelSet::a1_a2: idx = {0, 1}; break;
    }
    for (std::size_t i : idx)
        if (i >= available)
            throw data_error(context + ": channel A" + std::to_string(i + 1) +
                             " not present (recording has " + std::to_string(available) +
                             " channel(s))");
    return idx;
}

// Features for one manifest row: preprocess each requested channel, extract,
// combine across channels in the linear domain, then finish in dB.
Matrix extract_one(const RunConfig& cfg, const Recording& rec,
                   const std::vector<std::size_t>& channels, double fo) {
    std::vector<Matrix> per_channel;
    per_channel.reserve(channels.size());

    if (cfg.is_harmonic_method()) {
        const HarmonicConfig hc = cfg.harmonic_for_method();
        for (std::size_t c : channels) {
            const auto filtered = butterworth_zero_phase_lowpass(
                rec.channels[c], rec.fs, cfg.preprocess.cutoff_hz, cfg.preprocess.order);
            per_channel.push_back(extract_harmonic_rows(filtered, fo, hc));
        }
        const Matrix combined = combine_channels(per_channel);
        const Matrix trimmed = trim_features(combined, hc.min_window());
        return postprocess(trimmed, hc);
    }

    const BaselineConfig bc = cfg.baseline_for_method();
    for (std::size_t c : channels) {
        const auto filtered = butterworth_zero_phase_lowpass(
            rec.channels[c], rec.fs, cfg.preprocess.cutoff_hz, cfg.preprocess.order);
        per_channel.push_back(extract_baseline_rows_linear(filtered, rec.fs, bc));
    }
    Matrix combined = combine_channels(per_channel);
    for (std::size_t i = 0; i < combined.rows(); ++i)
        for (std::size_t k = 0; k < combined.cols(); ++k)
            combined(i, k) = to_decibels(combined(i, k), bc.db_floor);
    return combined;
}

} // namespace

std::filesystem::path feature_store_path(const RunConfig& cfg) {
    return std::filesystem::path(cfg.paths.out_dir) / "features" / (run_key(cfg) + ".csv");
}

std::filesystem::path adjust_dir(const RunConfig& cfg) {
    return std::filesystem::path(cfg.paths.out_dir) / "adjust" / run_key(cfg);
}

std::filesystem::path eval_dir(const RunConfig& cfg) {
    return std::filesystem::path(cfg.paths.out_dir) / "eval" / run_key(cfg);
}

Manifest run_synth(const RunConfig& cfg) {
    cfg.validate();
    SynthTuning tuning;
    tuning.snr_db = cfg.synth.snr_db;
    tuning.background_scale = cfg.synth.background_scale;
    return generate_dataset(default_bearing_set(cfg.synth.defect_severity), cfg.grid(),
                            cfg.synth.runs_per_cell, cfg.seed, cfg.paths.data_dir, tuning);
}

FeatureMatrix extract_features(const RunConfig& cfg, const Manifest& manifest,
                               const std::filesystem::path& manifest_dir) {
    cfg.validate();
    if (manifest.rows.empty()) throw data_error("extract_features: manifest has no rows");

    struct RowResult {
        Matrix rows;
        RowMeta base;
    };

    const auto process = [&](const ManifestRow& row) -> RowResult {
        const std::filesystem::path stem = manifest_dir / row.path;
        try {
            const Recording rec = read_recording(stem);
            if (std::abs(rec.fs - cfg.fs_hz) > 1e-9)
                throw data_error("recording sampled at " + detail::format_double(rec.fs) +
                                 " Hz but config expects " + detail::format_double(cfg.fs_hz));
            const auto channels =
                channel_indices(cfg.channels, rec.channels.size(), stem.string());
            RowResult result;
            result.rows = extract_one(cfg, rec, channels, row.condition.fo_hz());
            result.base = {row.bearing_id, row.label, row.condition, row.run, 0};
            return result;
        } catch (const data_error&) {
            throw;
        } catch (const std::exception& e) {
            throw data_error(stem.string() + ": " + e.what());
        }
    };

    // Per-recording extraction is independent; results are gathered in
    // manifest order so the store is byte-identical however this schedules.
    const std::size_t n = manifest.rows.size();
    const std::size_t workers =
        std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
    std::vector<RowResult> results(n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) results[i] = process(manifest.rows[i]);
    } else {
        std::vector<std::future<void>> futures;
        futures.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            futures.push_back(std::async(std::launch::async, [&, w] {
                for (std::size_t i = w; i < n; i += workers)
                    results[i] = process(manifest.rows[i]);
            }));
        }
        for (auto& f : futures) f.get();
    }

    FeatureMatrix features;
    if (cfg.is_harmonic_method()) {
        const HarmonicConfig hc = cfg.harmonic_for_method();
        for (std::size_t j = 0; j < hc.feature_count(); ++j)
            features.feature_labels.push_back(harmonic_feature_label(j, hc.d));
    } else {
        const BaselineConfig bc = cfg.baseline_for_method();
        for (std::size_t j = 0; j < bc.feature_count(cfg.fs_hz); ++j)
            features.feature_labels.push_back(baseline_feature_label(j, cfg.fs_hz, bc.window));
    }

    for (const RowResult& r : results) {
        for (std::size_t seg = 0; seg < r.rows.rows(); ++seg) {
            std::vector<double> row(r.rows.cols());
            for (std::size_t k = 0; k < r.rows.cols(); ++k) row[k] = r.rows(seg, k);
            features.values.append_row(row);
            RowMeta meta = r.base;
            meta.segment = static_cast<int>(seg);
            features.meta.push_back(std::move(meta));
        }
    }
    return features;
}

std::filesystem::path run_extract(const RunConfig& cfg) {
    const std::filesystem::path data_dir = cfg.paths.data_dir;
    const Manifest manifest = read_manifest(data_dir / "manifest.csv");
    const FeatureMatrix features = extract_features(cfg, manifest, data_dir);

    const std::filesystem::path store = feature_store_path(cfg);
    std::error_code ec;
    std::filesystem::create_directories(store.parent_path(), ec);
    if (ec) throw data_error("run_extract: cannot create " + store.parent_path().string());
    write_feature_store(features, store);
    return store;
}

AdjustmentModel fit_split_adjustment(const FeatureMatrix& features, const SplitPlan& split,
                                     bool allow_mixed) {
    std::vector<std::size_t> training;
    for (std::size_t idx : split.train_rows) {
        if (allow_mixed || features.meta[idx].label == HealthClass::healthy)
            training.push_back(idx);
    }
    if (training.empty())
        throw data_error("fit_split_adjustment: no healthy training rows for bearing " +
                         split.test_bearing +
                         " (pass --allow-mixed-training to fit on faulty rows)");

    const FeatureMatrix h = features.select_rows(training);
    AdjustmentModel model = fit_adjustment(h.values, h.fo_hz(), h.to_nm());
    model.trained_on += allow_mixed ? " healthy_only=false" : " healthy_only=true";
    return model;
}

FeatureMatrix apply_to_store(const FeatureMatrix& features, const AdjustmentModel& model) {
    FeatureMatrix adjusted = features;
    adjusted.values =
        apply_adjustment(features.values, features.fo_hz(), features.to_nm(), model);
    return adjusted;
}

namespace {

std::string split_key(const SplitPlan& split) {
    return split.test_bearing + "_" + detail::format_double(split.test_condition.speed_rpm) +
           "_" + detail::format_double(split.test_condition.load_nm);
}

FeatureMatrix load_store(const RunConfig& cfg) {
    const std::filesystem::path store = feature_store_path(cfg);
    if (!std::filesystem::exists(store))
        throw data_error("missing feature store " + store.string() + " (run 'extract' first)");
    return read_feature_store(store);
}

} // namespace

std::filesystem::path run_adjust(const RunConfig& cfg, bool allow_mixed,
                                 const std::optional<std::string>& split_filter) {
    if (!cfg.is_harmonic_method())
        throw config_error("adjust applies to the harmonic methods (HAR, HARH), not " +
                           to_string(cfg.method));
    const FeatureMatrix features = load_store(cfg);
    std::vector<SplitPlan> splits = make_splits(features.meta, cfg.eval.test_conditions);

    if (split_filter) {
        const auto parts = detail::split(*split_filter, ':');
        if (parts.size() != 3)
            throw config_error("--split expects BEARING:RPM:NM, got '" + *split_filter + "'");
        const Condition wanted{detail::parse_double(parts[1]), detail::parse_double(parts[2])};
        std::erase_if(splits, [&](const SplitPlan& s) {
            return s.test_bearing != parts[0] || !(s.test_condition == wanted);
        });
        if (splits.empty())
            throw data_error("run_adjust: no split matches '" + *split_filter + "'");
    }

    const std::filesystem::path base = adjust_dir(cfg);
    for (const SplitPlan& split : splits) {
        const AdjustmentModel model = fit_split_adjustment(features, split, allow_mixed);
        const FeatureMatrix adjusted = apply_to_store(features, model);

        const std::filesystem::path dir = base / split_key(split);
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec) throw data_error("run_adjust: cannot create " + dir.string());
        save_adjustment(model, dir / "model.txt");
        write_feature_store(adjusted, dir / "features.csv");
    }
    return base;
}

RunReport run_eval(const RunConfig& cfg, bool allow_mixed) {
    const FeatureMatrix features = load_store(cfg);
    const std::vector<SplitPlan> splits = make_splits(features.meta, cfg.eval.test_conditions);

    RunReport report;
    report.method = cfg.method;
    report.channels = cfg.channels;
    report.seed = cfg.seed;
    report.config_hash = cfg.hash();

    for (const SplitPlan& split : splits) {
        if (cfg.is_harmonic_method()) {
            const AdjustmentModel model = fit_split_adjustment(features, split, allow_mixed);
            const FeatureMatrix adjusted = apply_to_store(features, model);
            report.cells.push_back(evaluate_split(adjusted, split, cfg.eval.pca_components));
        } else {
            report.cells.push_back(evaluate_split(features, split, cfg.eval.pca_components));
        }
    }

    report.aggregates = aggregate(report.cells);
    write_eval_reports(report, eval_dir(cfg));
    return report;
}

std::string run_report(const std::vector<std::filesystem::path>& run_dirs) {
    if (run_dirs.empty()) throw config_error("report: need at least one run directory");
    std::vector<RunReport> runs;
    runs.reserve(run_dirs.size());
    for (const auto& dir : run_dirs) runs.push_back(read_eval_reports(dir));
    return render_comparison(runs);
}

} // namespace harmspace
