#include "baryfit/linalg.hpp"

#include <limits>

namespace baryfit {

CMatrix build_cauchy(std::span<const Complex> points, std::span<const Complex> supports) {
    const auto rows = static_cast<Eigen::Index>(points.size());
    const auto cols = static_cast<Eigen::Index>(supports.size());
    CMatrix C(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        const Complex lam = supports[static_cast<std::size_t>(j)];
        for (Eigen::Index i = 0; i < rows; ++i) {
            const Complex z = points[static_cast<std::size_t>(i)];
            if (z == lam) throw DomainError("Cauchy matrix: sample point coincides with a support point");
            C(i, j) = 1.0 / (z - lam);
        }
    }
    return C;
}

LevySystem LevySystem::assemble(const SupportSet& supports, const SampleSet& data) {
    LevySystem sys;
    sys.active_points = data.active_points();
    const auto vals = data.active_values();
    sys.cauchy = build_cauchy(sys.active_points, supports.points);
    sys.interp_values = Eigen::Map<const CVector>(supports.values.data(),
                                                  static_cast<Eigen::Index>(supports.values.size()));
    sys.data_values = Eigen::Map<const CVector>(vals.data(), static_cast<Eigen::Index>(vals.size()));
    return sys;
}

CMatrix levy_matrix(const LevySystem& system) {
    return system.data_values.asDiagonal() * system.cauchy -
           system.cauchy * system.interp_values.asDiagonal();
}

WeightingDiag WeightingDiag::from_denominators(const CVector& den) {
    RVector mag = den.cwiseAbs();
    const double top = mag.size() > 0 ? mag.maxCoeff() : 0.0;
    if (!std::isfinite(top)) throw NumericalError("weighting: non-finite denominator value");
    if (top == 0.0) throw NumericalError("weighting: denominator vanishes at every active sample");
    const double floor_value = std::max(std::numeric_limits<double>::epsilon() * top,
                                        std::numeric_limits<double>::min());
    WeightingDiag D;
    D.entries = mag.cwiseMax(floor_value).cwiseInverse();
    return D;
}

WeightingDiag WeightingDiag::identity(Eigen::Index n) { return {RVector::Ones(n)}; }

CVector min_unit_norm_solution(const CMatrix& A) {
    const Eigen::Index k = A.cols();
    if (k == 0) throw DomainError("min_unit_norm_solution: matrix has no columns");
    if (A.rows() == 0) {
        CVector e = CVector::Zero(k);
        e(k - 1) = 1.0;
        return e;
    }
    Eigen::JacobiSVD<CMatrix, Eigen::ColPivHouseholderQRPreconditioner> svd(A, Eigen::ComputeFullV);
    CVector v = svd.matrixV().col(k - 1);
    return v / v.norm();
}

CVector pivoted_weighted_lsq(const WeightingDiag& D, const CMatrix& F, const CVector& b,
                             Eigen::Index pivot) {
    const Eigen::Index k = F.cols();
    if (pivot < 0 || pivot >= k) throw DomainError("pivoted_weighted_lsq: pivot index out of range");
    if (F.rows() != b.size() || D.entries.size() != b.size())
        throw DomainError("pivoted_weighted_lsq: dimension mismatch");

    CVector w = CVector::Zero(k);
    w(pivot) = 1.0;
    if (k == 1) return w;

    CMatrix rest(F.rows(), k - 1);
    for (Eigen::Index j = 0, c = 0; j < k; ++j)
        if (j != pivot) rest.col(c++) = F.col(j);

    const CMatrix lhs = D.entries.asDiagonal() * rest;
    const CVector rhs = D.entries.asDiagonal() * (b - F.col(pivot));
    const CVector v = lhs.completeOrthogonalDecomposition().solve(rhs);

    for (Eigen::Index j = 0, c = 0; j < k; ++j)
        if (j != pivot) w(j) = v(c++);
    return w;
}

}  // namespace baryfit
