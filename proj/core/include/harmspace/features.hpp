#pragma once

#include "harmspace/matrix.hpp"

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace harmspace {

enum class HealthClass { healthy, faulty };

std::string to_string(HealthClass c);
HealthClass health_class_from_string(const std::string& s);

// One operating condition: shaft speed and load torque.
struct Condition {
    double speed_rpm = 0.0;
    double load_nm = 0.0;

    double fo_hz() const { return speed_rpm / 60.0; }
    auto operator<=>(const Condition&) const = default;
};

// Per-row provenance for a feature matrix row (one analysis segment).
struct RowMeta {
    std::string bearing_id;
    HealthClass label = HealthClass::healthy;
    Condition condition;
    int run = 0;
    int segment = 0;
};

// n feature rows with aligned per-row condition vectors and labels.
struct FeatureMatrix {
    Matrix values;
    std::vector<RowMeta> meta;                // size == values.rows()
    std::vector<std::string> feature_labels;  // size == values.cols()

    std::size_t rows() const { return values.rows(); }
    std::size_t cols() const { return values.cols(); }

    // Per-row operating frequency (Hz) and load (Nm), aligned with values.
    std::vector<double> fo_hz() const;
    std::vector<double> to_nm() const;

    FeatureMatrix select_rows(std::span<const std::size_t> idx) const;
};

} // namespace harmspace
