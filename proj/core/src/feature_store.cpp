#include "harmspace/feature_store.hpp"

#include "harmspace/errors.hpp"
#include "internal/text.hpp"

#include <fstream>
#include <string>

namespace harmspace {

namespace {
constexpr const char* kMetaHeader = "bearing_id,class,speed_rpm,load_nm,run,segment";
constexpr int kMetaColumns = 6;
} // namespace

void write_feature_store(const FeatureMatrix& features, const std::filesystem::path& path) {
    if (!features.feature_labels.empty() && features.feature_labels.size() != features.cols())
        throw std::invalid_argument("write_feature_store: label count mismatch");
    if (features.meta.size() != features.rows())
        throw std::invalid_argument("write_feature_store: metadata count mismatch");

    std::ofstream out(path);
    if (!out) throw data_error("write_feature_store: cannot open " + path.string());

    out << kMetaHeader;
    for (std::size_t j = 0; j < features.cols(); ++j) {
        out << ',';
        out << (features.feature_labels.empty() ? "f" + std::to_string(j)
                                                : features.feature_labels[j]);
    }
    out << '\n';

    for (std::size_t i = 0; i < features.rows(); ++i) {
        const RowMeta& m = features.meta[i];
        out << m.bearing_id << ',' << to_string(m.label) << ','
            << detail::format_double(m.condition.speed_rpm) << ','
            << detail::format_double(m.condition.load_nm) << ',' << m.run << ',' << m.segment;
        for (std::size_t j = 0; j < features.cols(); ++j)
            out << ',' << detail::format_double(features.values(i, j));
        out << '\n';
    }
    if (!out) throw data_error("write_feature_store: write failed for " + path.string());
}

FeatureMatrix read_feature_store(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw data_error("read_feature_store: cannot open " + path.string());

    std::string line;
    if (!std::getline(in, line))
        throw data_error("read_feature_store: empty file " + path.string());

    const auto header = detail::split(detail::trim(line), ',');
    if (header.size() < kMetaColumns)
        throw data_error("read_feature_store: malformed header in " + path.string());

    FeatureMatrix features;
    features.feature_labels.assign(header.begin() + kMetaColumns, header.end());
    const std::size_t n_features = features.feature_labels.size();

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view trimmed = detail::trim(line);
        if (trimmed.empty()) continue;
        const auto fields = detail::split(trimmed, ',');
        if (fields.size() != kMetaColumns + n_features)
            throw data_error("read_feature_store: row " + std::to_string(line_no) + " has " +
                             std::to_string(fields.size()) + " fields, expected " +
                             std::to_string(kMetaColumns + n_features));

        RowMeta meta;
        meta.bearing_id = fields[0];
        meta.label = health_class_from_string(fields[1]);
        meta.condition.speed_rpm = detail::parse_double(fields[2]);
        meta.condition.load_nm = detail::parse_double(fields[3]);
        meta.run = static_cast<int>(detail::parse_int(fields[4]));
        meta.segment = static_cast<int>(detail::parse_int(fields[5]));

        std::vector<double> row(n_features);
        for (std::size_t j = 0; j < n_features; ++j)
            row[j] = detail::parse_double(fields[kMetaColumns + j]);

        features.values.append_row(row);
        features.meta.push_back(std::move(meta));
    }
    return features;
}

} // namespace harmspace
