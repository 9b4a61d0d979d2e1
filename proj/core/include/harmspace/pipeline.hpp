#pragma once

#include "harmspace/adjustment.hpp"
#include "harmspace/config.hpp"
#include "harmspace/dataset.hpp"
#include "harmspace/evaluation.hpp"
#include "harmspace/features.hpp"
#include "harmspace/report.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace harmspace {

// Directory layout under the configured paths:
//   <data_dir>/manifest.csv, <data_dir>/recordings/...
//   <out_dir>/features/<METHOD>_<CHANNELS>.csv
//   <out_dir>/adjust/<METHOD>_<CHANNELS>/<BEARING>_<RPM>_<NM>/
//   <out_dir>/eval/<METHOD>_<CHANNELS>/
std::filesystem::path feature_store_path(const RunConfig& cfg);
std::filesystem::path adjust_dir(const RunConfig& cfg);
std::filesystem::path eval_dir(const RunConfig& cfg);

// Generates the synthetic dataset described by the config into paths.data_dir
// and returns the manifest.
Manifest run_synth(const RunConfig& cfg);

// Preprocess (zero-phase low-pass) and extract features for every manifest
// row with the configured method and channel set. Row order follows the
// manifest, segments in order, regardless of internal parallelism.
FeatureMatrix extract_features(const RunConfig& cfg, const Manifest& manifest,
                               const std::filesystem::path& manifest_dir);

// extract_features + persistence; returns the store path.
std::filesystem::path run_extract(const RunConfig& cfg);

// Condition-adjustment model for one split: fitted on the split's healthy
// training rows (all training rows with allow_mixed). Refuses a training set
// with no healthy rows unless allow_mixed is set.
AdjustmentModel fit_split_adjustment(const FeatureMatrix& features, const SplitPlan& split,
                                     bool allow_mixed);

// Applies a model to every row of the store, as if all data were healthy.
FeatureMatrix apply_to_store(const FeatureMatrix& features, const AdjustmentModel& model);

// Persists per-split models and adjusted stores under adjust_dir. With a
// split filter ("BEARING:RPM:NM") only that split is processed.
std::filesystem::path run_adjust(const RunConfig& cfg, bool allow_mixed,
                                 const std::optional<std::string>& split_filter = std::nullopt);

// Full protocol over all splits: per-split adjustment for the harmonic
// methods, then scale + PCA + kNN metrics, aggregation and report files.
RunReport run_eval(const RunConfig& cfg, bool allow_mixed = false);

// Method x channel-set comparison across completed eval runs.
std::string run_report(const std::vector<std::filesystem::path>& run_dirs);

} // namespace harmspace
