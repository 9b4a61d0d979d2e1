#pragma once

#include "harmspace/config.hpp"
#include "harmspace/evaluation.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace harmspace {

// Everything one evaluation run produces.
struct RunReport {
    Method method = Method::harh;
    ChannelSet channels = ChannelSet::a1_a2;
    std::uint64_t seed = 0;
    std::string config_hash;
    std::vector<EvalCell> cells; // ordered by (bearing, condition)
    EvalAggregates aggregates;
};

// Writes accuracy.csv and ocid_error.csv (rows = speed, columns = bearing,
// final row/column = bearing-equal aggregates), report.md with the same grids
// rendered as markdown, and runlog.jsonl with one line per cell carrying k*,
// the seed and the config hash. Output is byte-stable for identical inputs.
void write_eval_reports(const RunReport& report, const std::filesystem::path& out_dir);

// Rebuilds a RunReport from a run directory's runlog.jsonl.
RunReport read_eval_reports(const std::filesystem::path& run_dir);

// Method x channel-set comparison tables for both metrics, plus a warning
// banner when the runs were produced with different seeds.
std::string render_comparison(const std::vector<RunReport>& runs);

} // namespace harmspace
