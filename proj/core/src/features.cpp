#include "harmspace/features.hpp"

#include <stdexcept>

namespace harmspace {

std::string to_string(HealthClass c) {
    return c == HealthClass::healthy ? "healthy" : "faulty";
}

HealthClass health_class_from_string(const std::string& s) {
    if (s == "healthy") return HealthClass::healthy;
    if (s == "faulty") return HealthClass::faulty;
    throw std::invalid_argument("unknown health class '" + s + "'");
}

std::vector<double> FeatureMatrix::fo_hz() const {
    std::vector<double> out(meta.size());
    for (std::size_t i = 0; i < meta.size(); ++i) out[i] = meta[i].condition.fo_hz();
    return out;
}

std::vector<double> FeatureMatrix::to_nm() const {
    std::vector<double> out(meta.size());
    for (std::size_t i = 0; i < meta.size(); ++i) out[i] = meta[i].condition.load_nm;
    return out;
}

FeatureMatrix FeatureMatrix::select_rows(std::span<const std::size_t> idx) const {
    FeatureMatrix out;
    out.feature_labels = feature_labels;
    out.values = Matrix(idx.size(), values.cols());
    out.meta.reserve(idx.size());
    for (std::size_t r = 0; r < idx.size(); ++r) {
        const std::size_t src = idx[r];
        if (src >= values.rows())
            throw std::out_of_range("FeatureMatrix::select_rows: row index out of range");
        for (std::size_t c = 0; c < values.cols(); ++c) out.values(r, c) = values(src, c);
        out.meta.push_back(meta[src]);
    }
    return out;
}

} // namespace harmspace
