#include "baryfit/refine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "baryfit/linalg.hpp"

namespace baryfit {

namespace {

constexpr int kMaxHalvings = 30;

// Raw squared error over the active rows of a LevySystem.
double system_error(const LevySystem& sys, const CVector& w) {
    const CVector num = sys.cauchy * sys.interp_values.cwiseProduct(w);
    const CVector den = sys.cauchy * w;
    double sum = 0.0;
    for (Eigen::Index i = 0; i < num.size(); ++i) {
        if (den(i) == Complex{}) return std::numeric_limits<double>::infinity();
        sum += std::norm(num(i) / den(i) - sys.data_values(i));
    }
    return std::isfinite(sum) ? sum : std::numeric_limits<double>::infinity();
}

bool all_finite(const CVector& v) {
    return std::all_of(v.data(), v.data() + v.size(), [](Complex c) { return is_finite(c); });
}

std::size_t argmin_first(const std::vector<double>& e) {
    return static_cast<std::size_t>(std::min_element(e.begin(), e.end()) - e.begin());
}

CVector wf_step_on(const LevySystem& sys, const CVector& w_given) {
    const Eigen::Index k = w_given.size();
    if (w_given.cwiseAbs().maxCoeff() == 0.0) throw NumericalError("wf_step: previous weights are all zero");
    if (k == 1) return CVector::Ones(1);

    // Linearize in the same chart the constraint lives in (w_prev[pivot] = 1);
    // otherwise the step is scaled by the pivot entry.
    const Eigen::Index pivot = wf_pivot(w_given);
    const CVector w_prev = w_given / w_given(pivot);

    const CVector num = sys.cauchy * sys.interp_values.cwiseProduct(w_prev);
    const CVector den = sys.cauchy * w_prev;
    for (Eigen::Index i = 0; i < den.size(); ++i) {
        if (den(i) == Complex{})
            throw NumericalError("wf_step: denominator vanishes at active sample " + std::to_string(i));
    }
    const CVector r = num.cwiseQuotient(den);

    // F_ij = (h_j - r_prev(z_i)) / (z_i - λ_j),  b_i = d_prev(z_i) H(z_i) - n_prev(z_i)
    CMatrix F = sys.cauchy * sys.interp_values.asDiagonal();
    F -= r.asDiagonal() * sys.cauchy;
    const CVector b = den.cwiseProduct(sys.data_values) - num;

    return pivoted_weighted_lsq(WeightingDiag::from_denominators(den), F, b, pivot);
}

}  // namespace

double phase_aligned_distance(const CVector& a, const CVector& b) {
    const Complex inner = b.dot(a);  // b^H a
    const double mag = std::abs(inner);
    const Complex phase = mag > 0.0 ? inner / mag : Complex{1.0, 0.0};
    return (a - phase * b).norm();
}

Eigen::Index wf_pivot(const CVector& w_prev) {
    Eigen::Index largest = 0;
    const double top = w_prev.cwiseAbs().maxCoeff(&largest);
    if (std::abs(w_prev(0)) < 1e-12 * top) return largest;
    return 0;
}

RefineResult sk_iterate(const SupportSet& supports, const SampleSet& data, const RefineConfig& cfg) {
    if (supports.size() == 0) throw DomainError("sk_iterate: no support points");
    if (cfg.p_max < 1) throw DomainError("sk_iterate: p_max must be at least 1");

    const auto sys = LevySystem::assemble(supports, data);
    const CMatrix L = levy_matrix(sys);
    const Eigen::Index k = L.cols();

    RefineResult res;
    std::vector<CVector> iterates;
    CVector w_prev = CVector::Zero(k);
    WeightingDiag D = WeightingDiag::identity(L.rows());

    for (std::size_t p = 1; p <= cfg.p_max; ++p) {
        if (p > 1) {
            try {
                D = WeightingDiag::from_denominators(sys.cauchy * w_prev);
            } catch (const NumericalError&) {
                break;
            }
        }
        CVector w = k == 1 ? CVector::Ones(1) : min_unit_norm_solution(D.entries.asDiagonal() * L);
        ++res.steps;
        if (!all_finite(w)) break;
        res.errors.push_back(system_error(sys, w));
        iterates.push_back(w);
        if (phase_aligned_distance(w, w_prev) < cfg.tol_sk) {
            res.converged = true;
            break;
        }
        w_prev = w;
    }
    if (iterates.empty()) throw NumericalError("sk_iterate: first least-squares solve failed");

    res.best_index = argmin_first(res.errors);
    res.weights = iterates[res.best_index];
    return res;
}

CVector wf_step(const SupportSet& supports, const SampleSet& data, const CVector& w_prev) {
    if (static_cast<std::size_t>(w_prev.size()) != supports.size())
        throw DomainError("wf_step: weight vector length differs from support count");
    return wf_step_on(LevySystem::assemble(supports, data), w_prev);
}

RefineResult wf_iterate(const SupportSet& supports, const SampleSet& data, const CVector& w0,
                        const RefineConfig& cfg) {
    if (static_cast<std::size_t>(w0.size()) != supports.size())
        throw DomainError("wf_iterate: weight vector length differs from support count");
    if (cfg.p_max < 1) throw DomainError("wf_iterate: p_max must be at least 1");
    if (w0.cwiseAbs().maxCoeff() == 0.0) throw NumericalError("wf_iterate: initial weights are all zero");

    const auto sys = LevySystem::assemble(supports, data);
    RefineResult res;
    std::vector<CVector> iterates{w0 / w0.norm()};
    res.errors.push_back(system_error(sys, w0));

    CVector w_prev = iterates.front();
    for (std::size_t p = 1; p <= cfg.p_max; ++p) {
        CVector w;
        try {
            w = wf_step_on(sys, w_prev);
        } catch (const NumericalError&) {
            break;
        }
        ++res.steps;
        if (!all_finite(w) || w.norm() == 0.0) break;

        const Eigen::Index pivot = wf_pivot(w_prev);
        const CVector base = w_prev / w_prev(pivot);
        const CVector full = w / w(pivot);
        const double change = (full - base).norm();

        // Step halving when the full step increases the error.
        const double prev_err = res.errors.back();
        double err = system_error(sys, w);
        for (int h = 1; h <= kMaxHalvings && !(err <= prev_err); ++h) {
            const CVector trial = base + std::ldexp(1.0, -h) * (full - base);
            const double e = system_error(sys, trial);
            if (e < err) {
                w = trial;
                err = e;
            }
        }

        w /= w.norm();
        res.errors.push_back(system_error(sys, w));
        iterates.push_back(w);
        w_prev = w;
        if (change < cfg.tol_wf) {
            res.converged = true;
            break;
        }
    }

    res.best_index = argmin_first(res.errors);
    res.weights = iterates[res.best_index];
    return res;
}

}  // namespace baryfit
