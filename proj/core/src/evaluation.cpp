#include "harmspace/evaluation.hpp"

#include "harmspace/errors.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

namespace harmspace {

namespace {

std::string condition_label(const Condition& c) {
    return std::to_string(static_cast<long long>(c.speed_rpm)) + " RPM / " +
           std::to_string(static_cast<long long>(c.load_nm)) + " Nm";
}

struct Neighbor {
    double dist2;
    std::size_t idx;
};

double squared_distance(const double* a, const double* b, std::size_t dim) {
    double sum = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        const double diff = a[i] - b[i];
        sum += diff * diff;
    }
    return sum;
}

// All candidate rows ordered by (distance, row index); `skip` leaves one row
// out for LOO passes.
std::vector<Neighbor> ordered_neighbors(const Matrix& pts, std::span<const double> query,
                                        std::size_t skip = static_cast<std::size_t>(-1)) {
    std::vector<Neighbor> order;
    order.reserve(pts.rows());
    for (std::size_t i = 0; i < pts.rows(); ++i) {
        if (i == skip) continue;
        order.push_back({squared_distance(pts.row(i), query.data(), pts.cols()), i});
    }
    std::sort(order.begin(), order.end(), [](const Neighbor& a, const Neighbor& b) {
        if (a.dist2 != b.dist2) return a.dist2 < b.dist2;
        return a.idx < b.idx;
    });
    return order;
}

int max_label(std::span<const int> labels) {
    int top = 0;
    for (int l : labels) {
        if (l < 0) throw std::invalid_argument("labels must be non-negative integers");
        top = std::max(top, l);
    }
    return top;
}

// Majority vote over the first k ordered neighbors. Tied classes are decided
// by the earliest neighbor whose label belongs to the tied set. `counts` is
// caller-provided scratch sized max_label+1.
int vote(const std::vector<Neighbor>& order, std::span<const int> labels, std::size_t k,
         std::vector<std::size_t>& counts) {
    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t i = 0; i < k; ++i) ++counts[static_cast<std::size_t>(labels[order[i].idx])];

    std::size_t best = 0;
    for (std::size_t count : counts) best = std::max(best, count);
    std::size_t n_tied = 0;
    int winner = 0;
    for (std::size_t l = 0; l < counts.size(); ++l) {
        if (counts[l] == best) {
            ++n_tied;
            winner = static_cast<int>(l);
        }
    }
    if (n_tied == 1) return winner;

    for (std::size_t i = 0; i < k; ++i) {
        const int label = labels[order[i].idx];
        if (counts[static_cast<std::size_t>(label)] == best) return label;
    }
    return winner; // unreachable: the nearest neighbor's label always has the best count or ties
}

} // namespace

std::vector<SplitPlan> make_splits(const std::vector<RowMeta>& rows,
                                   const std::vector<Condition>& test_conditions) {
    if (rows.empty()) throw data_error("make_splits: empty manifest");
    if (test_conditions.empty()) throw data_error("make_splits: no test conditions given");

    std::set<std::string> bearings;
    for (const RowMeta& r : rows) bearings.insert(r.bearing_id);
    if (bearings.size() < 2)
        throw data_error("make_splits: invalid split, need at least 2 bearings, have " +
                         std::to_string(bearings.size()));

    for (const Condition& tc : test_conditions) {
        const bool present = std::any_of(rows.begin(), rows.end(), [&](const RowMeta& r) {
            return r.condition == tc;
        });
        if (!present)
            throw data_error("make_splits: test condition " + condition_label(tc) +
                             " does not appear in the manifest");
    }

    const auto held_out = [&](const Condition& c) {
        return std::find(test_conditions.begin(), test_conditions.end(), c) !=
               test_conditions.end();
    };

    std::vector<SplitPlan> plans;
    for (const std::string& bearing : bearings) {
        for (const Condition& tc : test_conditions) {
            SplitPlan plan;
            plan.test_bearing = bearing;
            plan.test_condition = tc;
            for (std::size_t i = 0; i < rows.size(); ++i) {
                const RowMeta& r = rows[i];
                if (r.bearing_id == bearing) {
                    if (r.condition == tc) plan.test_rows.push_back(i);
                } else if (!held_out(r.condition)) {
                    plan.train_rows.push_back(i);
                }
            }
            if (plan.train_rows.empty() || plan.test_rows.empty())
                throw data_error("make_splits: invalid split for " + bearing + " at " +
                                 condition_label(tc) + " (empty train or test side)");
            plans.push_back(std::move(plan));
        }
    }
    return plans;
}

Projection fit_projection(const Matrix& train, unsigned n_components) {
    const std::size_t n = train.rows();
    const std::size_t m = train.cols();
    if (n < 3) throw std::invalid_argument("fit_projection: need at least 3 rows");
    if (n_components < 1 || n_components > std::min(n, m))
        throw std::invalid_argument("fit_projection: component count out of range");

    Projection p;
    p.feature_means.assign(m, 0.0);
    p.feature_stds.assign(m, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i) mean += train(i, j);
        mean /= static_cast<double>(n);
        double var = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = train(i, j) - mean;
            var += d * d;
        }
        p.feature_means[j] = mean;
        p.feature_stds[j] = std::sqrt(var / static_cast<double>(n));
    }

    Eigen::MatrixXd z(n, m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j)
            z(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                p.feature_stds[j] > 0.0
                    ? (train(i, j) - p.feature_means[j]) / p.feature_stds[j]
                    : 0.0;

    Eigen::BDCSVD<Eigen::MatrixXd> svd(z, Eigen::ComputeThinV);
    const auto& v = svd.matrixV();
    const auto& sv = svd.singularValues();

    p.components = Matrix(n_components, m);
    p.explained_variance.assign(n_components, 0.0);
    for (unsigned c = 0; c < n_components; ++c) {
        // Deterministic sign: the entry of largest magnitude is positive.
        std::size_t arg = 0;
        double best = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            const double a = std::abs(v(static_cast<Eigen::Index>(j), c));
            if (a > best) {
                best = a;
                arg = j;
            }
        }
        const double sign = v(static_cast<Eigen::Index>(arg), c) < 0.0 ? -1.0 : 1.0;
        for (std::size_t j = 0; j < m; ++j)
            p.components(c, j) = sign * v(static_cast<Eigen::Index>(j), c);
        p.explained_variance[c] = sv(c) * sv(c) / static_cast<double>(n - 1);
    }
    return p;
}

Matrix project(const Projection& p, const Matrix& rows) {
    const std::size_t m = p.feature_means.size();
    if (rows.cols() != m)
        throw std::invalid_argument("project: feature count mismatch (" +
                                    std::to_string(rows.cols()) + " vs " + std::to_string(m) + ")");
    const std::size_t n_components = p.components.rows();
    Matrix out(rows.rows(), n_components);
    std::vector<double> scaled(m);
    for (std::size_t i = 0; i < rows.rows(); ++i) {
        for (std::size_t j = 0; j < m; ++j)
            scaled[j] = p.feature_stds[j] > 0.0
                            ? (rows(i, j) - p.feature_means[j]) / p.feature_stds[j]
                            : 0.0;
        for (std::size_t c = 0; c < n_components; ++c) {
            double dot = 0.0;
            for (std::size_t j = 0; j < m; ++j) dot += scaled[j] * p.components(c, j);
            out(i, c) = dot;
        }
    }
    return out;
}

int knn_predict(const Matrix& train_pts, std::span<const int> train_labels,
                std::span<const double> query, std::size_t k) {
    if (train_pts.rows() == 0) throw std::invalid_argument("knn_predict: empty training set");
    if (train_labels.size() != train_pts.rows())
        throw std::invalid_argument("knn_predict: label count mismatch");
    if (k < 1 || k > train_pts.rows())
        throw std::invalid_argument("knn_predict: k out of range");
    if (query.size() != train_pts.cols())
        throw std::invalid_argument("knn_predict: query dimension mismatch");

    const auto order = ordered_neighbors(train_pts, query);
    std::vector<std::size_t> counts(static_cast<std::size_t>(max_label(train_labels)) + 1);
    return vote(order, train_labels, k, counts);
}

std::size_t select_k_star(const Matrix& pts, std::span<const int> labels, std::size_t k_max) {
    const std::size_t n = pts.rows();
    if (n < 2) throw std::invalid_argument("select_k_star: need at least 2 points");
    if (labels.size() != n) throw std::invalid_argument("select_k_star: label count mismatch");
    if (k_max < 1) throw std::invalid_argument("select_k_star: k_max must be >= 1");
    k_max = std::min(k_max, n - 1);

    std::map<int, std::size_t> class_counts;
    for (int l : labels) ++class_counts[l];

    // One neighbor ordering per point, reused for every candidate k.
    std::vector<std::vector<Neighbor>> orders(n);
    for (std::size_t i = 0; i < n; ++i)
        orders[i] = ordered_neighbors(pts, std::span(pts.row(i), pts.cols()), i);

    std::vector<std::size_t> counts(static_cast<std::size_t>(max_label(labels)) + 1);
    std::size_t best_k = 1;
    double best_error = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k <= k_max; ++k) {
        std::map<int, std::size_t> class_errors;
        for (std::size_t i = 0; i < n; ++i)
            if (vote(orders[i], labels, k, counts) != labels[i]) ++class_errors[labels[i]];

        double error = 0.0;
        for (const auto& [label, count] : class_counts)
            error += static_cast<double>(class_errors[label]) / static_cast<double>(count);
        error /= static_cast<double>(class_counts.size());

        if (error < best_error) {
            best_error = error;
            best_k = k;
        }
    }
    return best_k;
}

double classification_accuracy(const Matrix& train_pts, std::span<const int> train_labels,
                               const Matrix& test_pts, std::span<const int> test_labels,
                               std::size_t k) {
    if (test_pts.rows() == 0) throw std::invalid_argument("classification_accuracy: empty test set");
    if (test_labels.size() != test_pts.rows())
        throw std::invalid_argument("classification_accuracy: label count mismatch");

    std::size_t correct = 0;
    for (std::size_t i = 0; i < test_pts.rows(); ++i) {
        const int predicted =
            knn_predict(train_pts, train_labels, std::span(test_pts.row(i), test_pts.cols()), k);
        if (predicted == test_labels[i]) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(test_pts.rows());
}

double two_sample_loo_error(const Matrix& pool_pts, std::size_t n_first, std::size_t k) {
    const std::size_t n = pool_pts.rows();
    if (n_first == 0 || n_first >= n)
        throw std::invalid_argument("two_sample_loo_error: both pool sides must be non-empty");
    if (k < 1 || k > n - 1) throw std::invalid_argument("two_sample_loo_error: k out of range");

    std::vector<int> labels(n, 0);
    for (std::size_t i = n_first; i < n; ++i) labels[i] = 1;

    std::vector<std::size_t> counts(2);
    std::size_t errors = 0;
    for (std::size_t i = n_first; i < n; ++i) {
        const auto order = ordered_neighbors(pool_pts, std::span(pool_pts.row(i), pool_pts.cols()), i);
        if (vote(order, labels, k, counts) != 1) ++errors;
    }
    return static_cast<double>(errors) / static_cast<double>(n - n_first);
}

EvalAggregates aggregate(std::span<const EvalCell> cells) {
    if (cells.empty()) throw std::invalid_argument("aggregate: no cells");

    std::map<std::string, std::pair<double, double>> sums; // bearing -> (acc, ocid)
    std::map<std::string, std::size_t> counts;
    for (const EvalCell& c : cells) {
        sums[c.bearing].first += c.accuracy;
        sums[c.bearing].second += c.ocid_error;
        ++counts[c.bearing];
    }

    EvalAggregates agg;
    for (const auto& [bearing, sum] : sums) {
        const auto n = static_cast<double>(counts[bearing]);
        agg.accuracy += sum.first / n;
        agg.ocid_error += sum.second / n;
    }
    const auto n_bearings = static_cast<double>(sums.size());
    agg.accuracy /= n_bearings;
    agg.ocid_error /= n_bearings;
    return agg;
}

EvalCell evaluate_split(const FeatureMatrix& features, const SplitPlan& split,
                        unsigned pca_components) {
    const FeatureMatrix train = features.select_rows(split.train_rows);
    const FeatureMatrix test = features.select_rows(split.test_rows);

    EvalCell cell;
    cell.bearing = split.test_bearing;
    cell.condition = split.test_condition;
    cell.n_train = train.rows();
    cell.n_test = test.rows();

    std::vector<int> train_labels(train.rows());
    for (std::size_t i = 0; i < train.rows(); ++i)
        train_labels[i] = train.meta[i].label == HealthClass::faulty ? 1 : 0;
    std::vector<int> test_labels(test.rows());
    for (std::size_t i = 0; i < test.rows(); ++i)
        test_labels[i] = test.meta[i].label == HealthClass::faulty ? 1 : 0;

    // Scaler and PCA see training rows only; test rows are projected through.
    const Projection proj = fit_projection(train.values, pca_components);
    const Matrix train_pts = project(proj, train.values);
    const Matrix test_pts = project(proj, test.values);

    // k is capped by the training bearing with the fewest rows.
    std::map<std::string, std::size_t> per_bearing;
    for (const RowMeta& r : train.meta) ++per_bearing[r.bearing_id];
    std::size_t k_max = train.rows();
    for (const auto& [bearing, count] : per_bearing) k_max = std::min(k_max, count);
    k_max = std::min(k_max, train.rows() - 1);
    k_max = std::max<std::size_t>(k_max, 1);

    cell.k_star = select_k_star(train_pts, train_labels, k_max);
    cell.accuracy =
        classification_accuracy(train_pts, train_labels, test_pts, test_labels, cell.k_star);

    // Same-class pool: training rows of the test bearing's class, then the
    // test rows, relabeled train/test.
    const HealthClass test_class = test.meta.front().label;
    for (const RowMeta& r : test.meta)
        if (r.label != test_class)
            throw data_error("evaluate_split: test rows mix health classes for bearing " +
                             split.test_bearing);

    std::vector<std::size_t> same_class;
    for (std::size_t i = 0; i < train.rows(); ++i)
        if (train.meta[i].label == test_class) same_class.push_back(i);
    if (same_class.empty())
        throw data_error("evaluate_split: no " + to_string(test_class) +
                         " training rows to compare against for bearing " + split.test_bearing);

    Matrix pool(same_class.size() + test_pts.rows(), train_pts.cols());
    for (std::size_t i = 0; i < same_class.size(); ++i)
        for (std::size_t c = 0; c < train_pts.cols(); ++c) pool(i, c) = train_pts(same_class[i], c);
    for (std::size_t i = 0; i < test_pts.rows(); ++i)
        for (std::size_t c = 0; c < test_pts.cols(); ++c)
            pool(same_class.size() + i, c) = test_pts(i, c);

    const std::size_t k_pool = std::min(cell.k_star, pool.rows() - 1);
    cell.ocid_error = two_sample_loo_error(pool, same_class.size(), k_pool);
    return cell;
}

} // namespace harmspace
