#pragma once

#include "harmspace/matrix.hpp"

#include <array>
#include <filesystem>
#include <span>
#include <string>

namespace harmspace {

// Per-feature degree-2 polynomial model of the operating condition, used to
// subtract the speed/load energy trend. Row i holds the coefficients for
// feature i over the monomials [1, a, b, a^2, ab, b^2] with a = operating
// frequency (Hz) and b = load (Nm). The intercept column is zeroed after
// training so only the condition-dependent trend is removed.
struct AdjustmentModel {
    Matrix coeffs; // m x 6, column 0 == 0
    std::string trained_on; // provenance: row count + healthy-only flag + input hash

    static constexpr std::array<const char*, 6> monomials = {"1", "a", "b",
                                                             "a^2", "ab", "b^2"};
    std::size_t feature_count() const { return coeffs.rows(); }
};

// Row i = [1, fo[i], to[i], fo[i]^2, fo[i]*to[i], to[i]^2].
Matrix make_condition_monomials(std::span<const double> fo, std::span<const double> to);

// Ordinary least squares per feature column of H against the condition
// monomials, solved by column-scaled Householder QR; the intercept is zeroed
// afterwards. Requires n >= 6 and a full-rank design (at least 6 distinct
// (fo, to) pairs not on a conic); a rank-deficient design throws naming the
// dependent monomials. Callers are responsible for passing healthy rows only.
AdjustmentModel fit_adjustment(const Matrix& h, std::span<const double> fo,
                               std::span<const double> to);

// H[:,i] - X * A[i,:]^T for every feature i. Pure; metadata is untouched.
Matrix apply_adjustment(const Matrix& h, std::span<const double> fo,
                        std::span<const double> to, const AdjustmentModel& model);

// Flat text persistence: one header line with m and the monomial descriptor,
// then m lines of 6 coefficients in shortest round-trip decimal form.
void save_adjustment(const AdjustmentModel& model, const std::filesystem::path& path);
AdjustmentModel load_adjustment(const std::filesystem::path& path);

} // namespace harmspace
