#ifndef BARYFIT_REFINE_HPP
#define BARYFIT_REFINE_HPP

#include "baryfit/core.hpp"

namespace baryfit {

struct RefineConfig {
    std::size_t p_max = 20;
    double tol_sk = 1e-8;
    double tol_wf = 1e-8;
};

/// Outcome of an SK or WF run. `errors[i]` is the raw active squared error of
/// the i-th recorded iterate; `weights` is the iterate at `best_index`.
struct RefineResult {
    CVector weights;
    std::vector<double> errors;
    bool converged = false;
    std::size_t best_index = 0;
    std::size_t steps = 0;  ///< number of least-squares solves performed
};

/// Sanathanan-Koerner reweighting in the fixed barycentric basis. The first
/// step (unit weighting) is the Levy solution. Iterates are unit-norm; the
/// weight-change test is phase aligned.
RefineResult sk_iterate(const SupportSet& supports, const SampleSet& data, const RefineConfig& cfg);

/// Index the WF step constrains to 1: zero unless |w[0]| < 1e-12 max|w|, in
/// which case the largest-magnitude entry.
Eigen::Index wf_pivot(const CVector& w_prev);

/// One Whitfield (Gauss-Newton) step linearized at w_prev. The result has
/// value 1 at wf_pivot(w_prev). Throws NumericalError for an all-zero w_prev
/// or a denominator that vanishes on an active sample.
CVector wf_step(const SupportSet& supports, const SampleSet& data, const CVector& w_prev);

/// Repeated WF steps from w0. errors[0] is the error of w0 itself, so the
/// returned weights are never worse than the initialization. A step that
/// increases the error is halved (up to 30 times) toward the previous
/// iterate; convergence is judged on the undamped step. Stored iterates are
/// scaled to unit norm.
RefineResult wf_iterate(const SupportSet& supports, const SampleSet& data, const CVector& w0,
                        const RefineConfig& cfg);

/// min over |c| = 1 of ||a - c b||_2.
double phase_aligned_distance(const CVector& a, const CVector& b);

}  // namespace baryfit

#endif
