#ifndef BARYFIT_AAA_HPP
#define BARYFIT_AAA_HPP

#include <limits>
#include <string_view>
#include <utility>

#include "baryfit/core.hpp"
#include "baryfit/datasets.hpp"

namespace baryfit {

struct FitConfig {
    double tol = 1e-12;          ///< threshold on the raw active squared error
    std::size_t max_degree = 30; ///< at most max_degree + 1 support points
};

/// How the weights of one greedy step were obtained.
enum class Branch {
    initial,       ///< k = 1, w = (1)
    levy,          ///< unit-norm Levy solution (classical AAA)
    sk,            ///< best SK iterate
    wf_single,     ///< single WF step from the previous weights extended by zero
    wf_from_sk,    ///< WF run seeded with the SK result
    wf_from_prev,  ///< WF run seeded with the previous weights extended by zero
    fallback,      ///< previous weights extended by zero (no candidate improved)
};

std::string_view branch_name(Branch b);

enum class StopReason {
    tolerance,         ///< raw active squared error fell below tol
    budget_exhausted,  ///< reached max_degree + 1 support points
    data_exhausted,    ///< only one active sample left
};

std::string_view stop_reason_name(StopReason s);

struct TraceRecord {
    std::size_t k = 0;
    std::size_t degree = 0;
    Complex support;
    double raw_active_sq_err = 0.0;
    double full_sq_err = 0.0;
    double l2 = 0.0;
    double linf = 0.0;
    Branch branch = Branch::initial;
};

struct FitTrace {
    std::vector<TraceRecord> records;
    StopReason stop = StopReason::budget_exhausted;
};

struct FitResult {
    RationalModel model;
    FitTrace trace;
};

/// Degree-0 model equal to the mean of all data values.
RationalModel initial_model(const SampleSet& data);

/// Active index with the largest |r(z_i) - H(z_i)|; lowest index on ties.
/// Throws DomainError if no sample is active.
std::size_t greedy_select(const RationalModel& model, const SampleSet& data);

/// Unit-norm weights minimizing the linearized (Levy) residual over the active
/// samples. A single support point gets w = (1).
CVector levy_weights(const SupportSet& supports, const SampleSet& data);

/// Classical AAA: greedy interpolation plus Levy weights until the raw
/// active squared error drops below cfg.tol or the degree budget is spent.
/// Requires at least two samples.
FitResult aaa_fit(const SampleSet& data, const FitConfig& cfg);

}  // namespace baryfit

#endif
