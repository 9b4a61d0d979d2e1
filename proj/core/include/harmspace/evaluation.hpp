#pragma once

#include "harmspace/features.hpp"
#include "harmspace/matrix.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace harmspace {

// One train/test partition: the test bearing is held out entirely, and every
// held-out operating condition is removed from the training side.
struct SplitPlan {
    std::string test_bearing;
    Condition test_condition;
    std::vector<std::size_t> train_rows;
    std::vector<std::size_t> test_rows;
};

// One SplitPlan per (bearing, test condition) pair. Training rows exclude the
// test bearing and every row recorded at any of the test conditions.
std::vector<SplitPlan> make_splits(const std::vector<RowMeta>& rows,
                                   const std::vector<Condition>& test_conditions);

// Standardization + PCA fitted on training rows only.
struct Projection {
    std::vector<double> feature_means;
    std::vector<double> feature_stds; // population std; 0 marks a constant feature
    Matrix components;                // p x m, orthonormal rows
    std::vector<double> explained_variance; // non-increasing
};

// Scale to zero mean / unit variance (train statistics), then keep the top
// n_components right singular vectors. Constant features contribute zero to
// every projected coordinate.
Projection fit_projection(const Matrix& train, unsigned n_components = 2);

// ((rows - means) / stds) * components^T.
Matrix project(const Projection& p, const Matrix& rows);

// Majority label among the k Euclidean-nearest training points. Vote ties go
// to the nearest neighbor's label among the tied classes; distance ties break
// toward the lower row index.
int knn_predict(const Matrix& train_pts, std::span<const int> train_labels,
                std::span<const double> query, std::size_t k);

// Leave-one-out search for the k in 1..k_max with the lowest class-imbalance
// reweighted error (per-class error rates averaged over classes); ties go to
// the smallest k.
std::size_t select_k_star(const Matrix& pts, std::span<const int> labels, std::size_t k_max);

// Fraction of test rows whose kNN(k) prediction matches their label.
double classification_accuracy(const Matrix& train_pts, std::span<const int> train_labels,
                               const Matrix& test_pts, std::span<const int> test_labels,
                               std::size_t k);

// Leave-one-out kNN(k) over a pool whose first n_first rows are labeled
// "train" and the rest "test"; returns the error rate over the test-labeled
// rows only. A high error means the two sets are indistinguishable (small
// domain shift).
double two_sample_loo_error(const Matrix& pool_pts, std::size_t n_first, std::size_t k);

// Metrics for one (bearing, condition) cell.
struct EvalCell {
    std::string bearing;
    Condition condition;
    double accuracy = 0.0;
    double ocid_error = 0.0;
    std::size_t k_star = 0;
    std::size_t n_train = 0;
    std::size_t n_test = 0;
};

struct EvalAggregates {
    double accuracy = 0.0;
    double ocid_error = 0.0;
};

// Mean over each bearing's cells, then an unweighted mean over bearings, so
// every bearing counts equally regardless of how many rows it contributed.
EvalAggregates aggregate(std::span<const EvalCell> cells);

// Full protocol for one split: PCA fitted on the training rows, k* selected
// by reweighted leave-one-out, then classification accuracy on the test rows
// and the operating-condition ID error on the same-class train/test pool.
EvalCell evaluate_split(const FeatureMatrix& features, const SplitPlan& split,
                        unsigned pca_components = 2);

} // namespace harmspace
