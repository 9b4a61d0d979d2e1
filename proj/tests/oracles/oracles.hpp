#pragma once

// Independent reference implementations used to compute expected values in
// tests. Everything here is deliberately slow and direct (O(N^2) transforms,
// exhaustive scans, long double accumulation) and shares no code with the
// library paths it checks.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <map>
#include <numbers>
#include <set>
#include <span>
#include <stdexcept>
#include <vector>

namespace oracles {

// Direct O(N^2) DFT.
inline std::vector<std::complex<double>> naive_dft(std::span<const double> x) {
    const std::size_t n = x.size();
    std::vector<std::complex<double>> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        long double re = 0.0L;
        long double im = 0.0L;
        for (std::size_t j = 0; j < n; ++j) {
            const long double angle = -2.0L * std::numbers::pi_v<long double> *
                                      static_cast<long double>(k) * static_cast<long double>(j) /
                                      static_cast<long double>(n);
            re += static_cast<long double>(x[j]) * std::cos(angle);
            im += static_cast<long double>(x[j]) * std::sin(angle);
        }
        out[k] = {static_cast<double>(re), static_cast<double>(im)};
    }
    return out;
}

// Least squares through the normal equations X^T X b = X^T y, solved by
// Gaussian elimination with partial pivoting in long double.
inline std::vector<double> normal_equations_fit(const std::vector<std::vector<double>>& x,
                                                std::span<const double> y) {
    const std::size_t n = x.size();
    const std::size_t p = x.front().size();
    if (y.size() != n) throw std::invalid_argument("normal_equations_fit: size mismatch");

    std::vector<std::vector<long double>> a(p, std::vector<long double>(p + 1, 0.0L));
    for (std::size_t r = 0; r < p; ++r) {
        for (std::size_t c = 0; c < p; ++c) {
            long double sum = 0.0L;
            for (std::size_t i = 0; i < n; ++i)
                sum += static_cast<long double>(x[i][r]) * static_cast<long double>(x[i][c]);
            a[r][c] = sum;
        }
        long double rhs = 0.0L;
        for (std::size_t i = 0; i < n; ++i)
            rhs += static_cast<long double>(x[i][r]) * static_cast<long double>(y[i]);
        a[r][p] = rhs;
    }

    for (std::size_t col = 0; col < p; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < p; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        if (a[pivot][col] == 0.0L)
            throw std::runtime_error("normal_equations_fit: singular system");
        std::swap(a[col], a[pivot]);
        for (std::size_t r = 0; r < p; ++r) {
            if (r == col) continue;
            const long double f = a[r][col] / a[col][col];
            for (std::size_t c = col; c <= p; ++c) a[r][c] -= f * a[col][c];
        }
    }

    std::vector<double> beta(p);
    for (std::size_t r = 0; r < p; ++r) beta[r] = static_cast<double>(a[r][p] / a[r][r]);
    return beta;
}

// Exhaustive kNN following the stated rules: neighbors ordered by
// (distance, index), majority vote, vote ties to the earliest neighbor whose
// label is tied.
struct KnnInstance {
    std::vector<std::vector<double>> points;
    std::vector<int> labels;
};

inline int brute_knn(const KnnInstance& inst, std::span<const double> query, std::size_t k,
                     std::ptrdiff_t skip = -1) {
    struct Entry {
        double dist2;
        std::size_t idx;
    };
    std::vector<Entry> entries;
    for (std::size_t i = 0; i < inst.points.size(); ++i) {
        if (static_cast<std::ptrdiff_t>(i) == skip) continue;
        double d2 = 0.0;
        for (std::size_t c = 0; c < query.size(); ++c) {
            const double diff = inst.points[i][c] - query[c];
            d2 += diff * diff;
        }
        entries.push_back({d2, i});
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        return a.dist2 != b.dist2 ? a.dist2 < b.dist2 : a.idx < b.idx;
    });

    std::map<int, std::size_t> counts;
    for (std::size_t i = 0; i < k; ++i) ++counts[inst.labels[entries[i].idx]];
    std::size_t best = 0;
    for (const auto& [label, count] : counts) best = std::max(best, count);
    std::set<int> tied;
    for (const auto& [label, count] : counts)
        if (count == best) tied.insert(label);
    if (tied.size() == 1) return *tied.begin();
    for (std::size_t i = 0; i < k; ++i)
        if (tied.count(inst.labels[entries[i].idx])) return inst.labels[entries[i].idx];
    return *tied.begin();
}

// Leave-one-out error reweighted by inverse class frequency, averaged over
// classes.
inline double brute_loo_reweighted_error(const KnnInstance& inst, std::size_t k) {
    std::map<int, std::size_t> class_counts;
    for (int l : inst.labels) ++class_counts[l];
    std::map<int, std::size_t> class_errors;
    for (std::size_t i = 0; i < inst.points.size(); ++i) {
        const int predicted = brute_knn(inst, inst.points[i], k, static_cast<std::ptrdiff_t>(i));
        if (predicted != inst.labels[i]) ++class_errors[inst.labels[i]];
    }
    double error = 0.0;
    for (const auto& [label, count] : class_counts)
        error += static_cast<double>(class_errors[label]) / static_cast<double>(count);
    return error / static_cast<double>(class_counts.size());
}

inline std::size_t brute_select_k_star(const KnnInstance& inst, std::size_t k_max) {
    k_max = std::min(k_max, inst.points.size() - 1);
    std::size_t best_k = 1;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k <= k_max; ++k) {
        const double e = brute_loo_reweighted_error(inst, k);
        if (e < best) {
            best = e;
            best_k = k;
        }
    }
    return best_k;
}

// LOO two-sample error on the rows labeled 1, following the same kNN rules.
inline double brute_two_sample_error(const KnnInstance& inst, std::size_t k) {
    std::size_t n_test = 0;
    std::size_t errors = 0;
    for (std::size_t i = 0; i < inst.points.size(); ++i) {
        if (inst.labels[i] != 1) continue;
        ++n_test;
        if (brute_knn(inst, inst.points[i], k, static_cast<std::ptrdiff_t>(i)) != 1) ++errors;
    }
    return static_cast<double>(errors) / static_cast<double>(n_test);
}

// Simple R^2 of an ordinary least-squares line fit.
inline double r_squared_of_line_fit(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (slope * x[i] + intercept);
        ss_res += r * r;
    }
    return 1.0 - ss_res / syy;
}

} // namespace oracles
