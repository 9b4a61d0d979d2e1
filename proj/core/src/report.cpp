#include "harmspace/report.hpp"

#include "harmspace/errors.hpp"
#include "internal/text.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace harmspace {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string condition_row_label(const Condition& c, bool loads_vary) {
    std::string label = detail::format_double(c.speed_rpm);
    if (loads_vary) label += ":" + detail::format_double(c.load_nm);
    return label;
}

struct Grid {
    std::vector<std::string> bearings;         // sorted
    std::vector<Condition> conditions;         // sorted by (speed, load)
    bool loads_vary = false;
    std::map<std::pair<std::string, Condition>, const EvalCell*> cells;
};

Grid layout(const std::vector<EvalCell>& cells) {
    Grid g;
    std::set<std::string> bearings;
    std::set<Condition> conditions;
    std::set<double> loads;
    for (const EvalCell& c : cells) {
        bearings.insert(c.bearing);
        conditions.insert(c.condition);
        loads.insert(c.condition.load_nm);
        g.cells[{c.bearing, c.condition}] = &c;
    }
    g.bearings.assign(bearings.begin(), bearings.end());
    g.conditions.assign(conditions.begin(), conditions.end());
    g.loads_vary = loads.size() > 1;
    return g;
}

double cell_metric(const EvalCell& c, bool accuracy) { return accuracy ? c.accuracy : c.ocid_error; }

void write_metric_csv(const RunReport& report, const Grid& g, bool accuracy,
                      const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw data_error("write_eval_reports: cannot open " + path.string());

    out << "# method=" << to_string(report.method) << " channels=" << to_string(report.channels)
        << " config_hash=" << report.config_hash << '\n';
    out << "speed_rpm";
    for (const std::string& b : g.bearings) out << ',' << b;
    out << ",all_bearings\n";

    for (const Condition& cond : g.conditions) {
        out << condition_row_label(cond, g.loads_vary);
        double sum = 0.0;
        std::size_t n = 0;
        for (const std::string& b : g.bearings) {
            out << ',';
            const auto it = g.cells.find({b, cond});
            if (it != g.cells.end()) {
                const double v = cell_metric(*it->second, accuracy);
                out << detail::format_double(v);
                sum += v;
                ++n;
            }
        }
        out << ',' << detail::format_double(n ? sum / static_cast<double>(n) : 0.0) << '\n';
    }

    // Final row: per-bearing means; the corner is the bearing-equal aggregate.
    out << "all_speeds";
    for (const std::string& b : g.bearings) {
        double sum = 0.0;
        std::size_t n = 0;
        for (const Condition& cond : g.conditions) {
            const auto it = g.cells.find({b, cond});
            if (it != g.cells.end()) {
                sum += cell_metric(*it->second, accuracy);
                ++n;
            }
        }
        out << ',' << detail::format_double(n ? sum / static_cast<double>(n) : 0.0);
    }
    out << ','
        << detail::format_double(accuracy ? report.aggregates.accuracy
                                          : report.aggregates.ocid_error)
        << '\n';
    if (!out) throw data_error("write_eval_reports: write failed for " + path.string());
}

std::string percent(double v) {
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(1);
    out << 100.0 * v << '%';
    return out.str();
}

void render_metric_table(std::ostream& out, const Grid& g, bool accuracy) {
    out << "| speed |";
    for (const std::string& b : g.bearings) out << ' ' << b << " |";
    out << "\n|---|";
    for (std::size_t i = 0; i < g.bearings.size(); ++i) out << "---|";
    out << '\n';
    for (const Condition& cond : g.conditions) {
        out << "| " << condition_row_label(cond, g.loads_vary) << " |";
        for (const std::string& b : g.bearings) {
            const auto it = g.cells.find({b, cond});
            out << ' ' << (it != g.cells.end() ? percent(cell_metric(*it->second, accuracy)) : "-")
                << " |";
        }
        out << '\n';
    }
}

} // namespace

void write_eval_reports(const RunReport& report, const std::filesystem::path& out_dir) {
    if (report.cells.empty()) throw std::invalid_argument("write_eval_reports: no cells");

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw data_error("write_eval_reports: cannot create " + out_dir.string());

    const Grid g = layout(report.cells);
    write_metric_csv(report, g, true, out_dir / "accuracy.csv");
    write_metric_csv(report, g, false, out_dir / "ocid_error.csv");

    {
        std::ofstream md(out_dir / "report.md");
        if (!md) throw data_error("write_eval_reports: cannot open report.md");
        md << "# " << to_string(report.method) << " with " << to_string(report.channels) << "\n\n";
        md << "config_hash: `" << report.config_hash << "`, seed: " << report.seed << "\n\n";
        md << "## Classification accuracy\n\n";
        render_metric_table(md, g, true);
        md << "\nReweighted aggregate (every bearing weighted equally): "
           << percent(report.aggregates.accuracy) << "\n\n";
        md << "## Operating condition ID error (higher is better)\n\n";
        render_metric_table(md, g, false);
        md << "\nReweighted aggregate (every bearing weighted equally): "
           << percent(report.aggregates.ocid_error) << "\n";
    }

    {
        std::ofstream log(out_dir / "runlog.jsonl");
        if (!log) throw data_error("write_eval_reports: cannot open runlog.jsonl");
        for (const EvalCell& c : report.cells) {
            ordered_json j;
            j["method"] = to_string(report.method);
            j["channels"] = to_string(report.channels);
            j["bearing"] = c.bearing;
            j["speed_rpm"] = c.condition.speed_rpm;
            j["load_nm"] = c.condition.load_nm;
            j["k_star"] = c.k_star;
            j["n_train"] = c.n_train;
            j["n_test"] = c.n_test;
            j["accuracy"] = c.accuracy;
            j["ocid_error"] = c.ocid_error;
            j["seed"] = report.seed;
            j["config_hash"] = report.config_hash;
            log << j.dump() << '\n';
        }
    }
}

RunReport read_eval_reports(const std::filesystem::path& run_dir) {
    const std::filesystem::path log_path = run_dir / "runlog.jsonl";
    std::ifstream in(log_path);
    if (!in) throw data_error("read_eval_reports: missing " + log_path.string());

    RunReport report;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (detail::trim(line).empty()) continue;
        ordered_json j;
        try {
            j = ordered_json::parse(line);
        } catch (const std::exception& e) {
            throw data_error("read_eval_reports: bad JSON in " + log_path.string() + ": " +
                             e.what());
        }
        if (first) {
            report.method = method_from_string(j.at("method").get<std::string>());
            report.channels = channel_set_from_string(j.at("channels").get<std::string>());
            report.seed = j.at("seed").get<std::uint64_t>();
            report.config_hash = j.at("config_hash").get<std::string>();
            first = false;
        }
        EvalCell cell;
        cell.bearing = j.at("bearing").get<std::string>();
        cell.condition.speed_rpm = j.at("speed_rpm").get<double>();
        cell.condition.load_nm = j.at("load_nm").get<double>();
        cell.k_star = j.at("k_star").get<std::size_t>();
        cell.n_train = j.at("n_train").get<std::size_t>();
        cell.n_test = j.at("n_test").get<std::size_t>();
        cell.accuracy = j.at("accuracy").get<double>();
        cell.ocid_error = j.at("ocid_error").get<double>();
        report.cells.push_back(std::move(cell));
    }
    if (report.cells.empty())
        throw data_error("read_eval_reports: no cells in " + log_path.string());
    report.aggregates = aggregate(report.cells);
    return report;
}

std::string render_comparison(const std::vector<RunReport>& runs) {
    if (runs.empty()) throw std::invalid_argument("render_comparison: no runs");

    std::set<std::uint64_t> seeds;
    for (const RunReport& r : runs) seeds.insert(r.seed);

    std::map<std::pair<ChannelSet, Method>, const RunReport*> by_key;
    for (const RunReport& r : runs) by_key[{r.channels, r.method}] = &r;

    const ChannelSet channel_rows[] = {ChannelSet::a1, ChannelSet::a2, ChannelSet::a1_a2};
    const Method method_cols[] = {Method::fft, Method::hfft, Method::har, Method::harh};

    std::ostringstream out;
    if (seeds.size() > 1) {
        out << "WARNING: runs use different seeds (";
        bool first = true;
        for (std::uint64_t s : seeds) {
            if (!first) out << ", ";
            out << s;
            first = false;
        }
        out << "); results are not directly comparable.\n\n";
    }

    const auto table = [&](bool accuracy) {
        out << "| source |";
        for (Method m : method_cols) out << ' ' << to_string(m) << " |";
        out << "\n|---|---|---|---|---|\n";
        for (ChannelSet c : channel_rows) {
            bool any = false;
            for (Method m : method_cols) any = any || by_key.count({c, m});
            if (!any) continue;
            out << "| " << to_string(c) << " |";
            for (Method m : method_cols) {
                const auto it = by_key.find({c, m});
                if (it == by_key.end()) {
                    out << " - |";
                } else {
                    const EvalAggregates& a = it->second->aggregates;
                    out << ' ' << percent(accuracy ? a.accuracy : a.ocid_error) << " |";
                }
            }
            out << '\n';
        }
    };

    out << "## Classification accuracy\n\n";
    table(true);
    out << "\n## Operating condition ID error (higher is better)\n\n";
    table(false);
    return out.str();
}

} // namespace harmspace
