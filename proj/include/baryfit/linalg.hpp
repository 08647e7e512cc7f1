#ifndef BARYFIT_LINALG_HPP
#define BARYFIT_LINALG_HPP

#include <span>

#include "baryfit/core.hpp"

namespace baryfit {

/**
 * Matrices of one linearized fitting step over the active samples:
 * the Cauchy matrix C_ij = 1/(z_i - λ_j), the interpolated values h_j and
 * the active data values H(z_i). The diagonals are kept as vectors.
 */
struct LevySystem {
    CMatrix cauchy;
    CVector interp_values;
    CVector data_values;
    std::vector<Complex> active_points;

    /// Throws DomainError if an active sample coincides with a support point.
    static LevySystem assemble(const SupportSet& supports, const SampleSet& data);

    Eigen::Index rows() const noexcept { return cauchy.rows(); }
    Eigen::Index cols() const noexcept { return cauchy.cols(); }
};

/// Positive diagonal 1/|d(z_i)| with a floor on |d| relative to its maximum.
struct WeightingDiag {
    RVector entries;

    /// 1 / max(|d_i|, eps * max_i |d_i|); all-zero or non-finite input throws
    /// NumericalError.
    static WeightingDiag from_denominators(const CVector& den);
    static WeightingDiag identity(Eigen::Index n);
};

/// Throws DomainError when some point coincides with some support.
CMatrix build_cauchy(std::span<const Complex> points, std::span<const Complex> supports);

/// G C - C H, entrywise (H(z_i) - h_j) / (z_i - λ_j).
CMatrix levy_matrix(const LevySystem& system);

/// Unit-norm right singular vector of the smallest singular value of A.
/// For rows < cols an exact null vector is returned.
CVector min_unit_norm_solution(const CMatrix& A);

/**
 * Solves  min || D (F_rest v - (b - F_pivot)) ||_2  over the k-1 entries
 * other than `pivot` and returns the full vector with w[pivot] = 1.
 * `pivot` is zero-based. Rank deficiency yields the minimum-norm solution.
 */
CVector pivoted_weighted_lsq(const WeightingDiag& D, const CMatrix& F, const CVector& b,
                             Eigen::Index pivot);

}  // namespace baryfit

#endif
