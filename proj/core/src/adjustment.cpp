#include "harmspace/adjustment.hpp"

#include "harmspace/errors.hpp"
#include "internal/text.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace harmspace {

Matrix make_condition_monomials(std::span<const double> fo, std::span<const double> to) {
    if (fo.size() != to.size())
        throw std::invalid_argument("make_condition_monomials: fo and to lengths differ");
    Matrix x(fo.size(), 6);
    for (std::size_t i = 0; i < fo.size(); ++i) {
        const double a = fo[i];
        const double b = to[i];
        if (!std::isfinite(a) || !std::isfinite(b))
            throw std::invalid_argument("make_condition_monomials: non-finite condition value");
        x(i, 0) = 1.0;
        x(i, 1) = a;
        x(i, 2) = b;
        x(i, 3) = a * a;
        x(i, 4) = a * b;
        x(i, 5) = b * b;
    }
    return x;
}

AdjustmentModel fit_adjustment(const Matrix& h, std::span<const double> fo,
                               std::span<const double> to) {
    const std::size_t n = h.rows();
    const std::size_t m = h.cols();
    if (fo.size() != n || to.size() != n)
        throw std::invalid_argument("fit_adjustment: condition vectors must match row count");
    if (n < 6)
        throw std::invalid_argument("fit_adjustment: need at least 6 rows, got " +
                                    std::to_string(n));

    const Matrix monomials = make_condition_monomials(fo, to);
    Eigen::MatrixXd x(n, 6);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < 6; ++j) x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = monomials(i, j);

    // Column scaling to unit max-abs tames the fo^2 term before factorization;
    // coefficients are scaled back afterwards.
    Eigen::VectorXd scale(6);
    for (Eigen::Index j = 0; j < 6; ++j) {
        const double s = x.col(j).cwiseAbs().maxCoeff();
        scale(j) = (s > 0.0) ? s : 1.0;
        x.col(j) /= scale(j);
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
    if (qr.rank() < 6) {
        // The trailing pivots identify the monomials that add no new direction.
        const auto perm = qr.colsPermutation().indices();
        std::string names;
        for (Eigen::Index j = qr.rank(); j < 6; ++j) {
            if (!names.empty()) names += ", ";
            names += AdjustmentModel::monomials[static_cast<std::size_t>(perm(j))];
        }
        throw std::invalid_argument(
            "fit_adjustment: ill-conditioned design (rank " + std::to_string(qr.rank()) +
            " of 6); dependent monomials: " + names +
            " -- the training grid needs more distinct speed/load values");
    }

    Eigen::MatrixXd rhs(n, m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) rhs(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = h(i, j);

    const Eigen::MatrixXd beta = qr.solve(rhs); // 6 x m, in scaled coordinates

    AdjustmentModel model;
    model.coeffs = Matrix(m, 6);
    for (std::size_t i = 0; i < m; ++i) {
        model.coeffs(i, 0) = 0.0; // the healthy baseline level stays in the data
        for (std::size_t j = 1; j < 6; ++j)
            model.coeffs(i, j) = beta(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) / scale(static_cast<Eigen::Index>(j));
    }

    std::string provenance = "rows=" + std::to_string(n) + " features=" + std::to_string(m);
    std::uint64_t hash = detail::fnv1a64(provenance);
    for (std::size_t i = 0; i < n; ++i) {
        hash = detail::fnv1a64(detail::format_double(fo[i]), hash);
        hash = detail::fnv1a64(detail::format_double(to[i]), hash);
        for (std::size_t j = 0; j < m; ++j)
            hash = detail::fnv1a64(detail::format_double(h(i, j)), hash);
    }
    model.trained_on = provenance + " hash=" + detail::hex64(hash);
    return model;
}

Matrix apply_adjustment(const Matrix& h, std::span<const double> fo,
                        std::span<const double> to, const AdjustmentModel& model) {
    if (h.cols() != model.coeffs.rows())
        throw std::invalid_argument("apply_adjustment: matrix has " + std::to_string(h.cols()) +
                                    " features but the model was trained on " +
                                    std::to_string(model.coeffs.rows()));
    if (fo.size() != h.rows() || to.size() != h.rows())
        throw std::invalid_argument("apply_adjustment: condition vectors must match row count");

    const Matrix x = make_condition_monomials(fo, to);
    Matrix out(h.rows(), h.cols());
    for (std::size_t r = 0; r < h.rows(); ++r) {
        for (std::size_t i = 0; i < h.cols(); ++i) {
            double trend = 0.0;
            for (std::size_t j = 0; j < 6; ++j) trend += model.coeffs(i, j) * x(r, j);
            out(r, i) = h(r, i) - trend;
        }
    }
    return out;
}

void save_adjustment(const AdjustmentModel& model, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw data_error("save_adjustment: cannot open " + path.string());

    out << "harmspace-adjustment v1 m=" << model.coeffs.rows() << " monomials=";
    for (std::size_t j = 0; j < 6; ++j) {
        if (j) out << ',';
        out << AdjustmentModel::monomials[j];
    }
    if (!model.trained_on.empty()) out << " trained_on=\"" << model.trained_on << '"';
    out << '\n';

    for (std::size_t i = 0; i < model.coeffs.rows(); ++i) {
        for (std::size_t j = 0; j < 6; ++j) {
            if (j) out << ' ';
            out << detail::format_double(model.coeffs(i, j));
        }
        out << '\n';
    }
    if (!out) throw data_error("save_adjustment: write failed for " + path.string());
}

AdjustmentModel load_adjustment(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw data_error("load_adjustment: cannot open " + path.string());

    std::string header;
    std::getline(in, header);
    const std::string magic = "harmspace-adjustment v1 m=";
    if (header.rfind(magic, 0) != 0)
        throw data_error("load_adjustment: bad header in " + path.string());

    std::size_t pos = magic.size();
    std::size_t end = header.find(' ', pos);
    const std::size_t m = static_cast<std::size_t>(detail::parse_int(
        std::string_view(header).substr(pos, end - pos)));

    AdjustmentModel model;
    model.coeffs = Matrix(m, 6);
    const std::size_t prov = header.find("trained_on=\"");
    if (prov != std::string::npos) {
        const std::size_t start = prov + 12;
        const std::size_t close = header.find('"', start);
        model.trained_on = header.substr(start, close - start);
    }

    std::string line;
    for (std::size_t i = 0; i < m; ++i) {
        if (!std::getline(in, line))
            throw data_error("load_adjustment: truncated file " + path.string());
        std::istringstream row(line);
        std::string token;
        for (std::size_t j = 0; j < 6; ++j) {
            if (!(row >> token))
                throw data_error("load_adjustment: short row " + std::to_string(i));
            model.coeffs(i, j) = detail::parse_double(token);
        }
    }
    return model;
}

} // namespace harmspace
