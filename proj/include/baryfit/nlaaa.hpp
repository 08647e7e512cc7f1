#ifndef BARYFIT_NLAAA_HPP
#define BARYFIT_NLAAA_HPP

#include <cstdint>
#include <random>

#include "baryfit/aaa.hpp"
#include "baryfit/refine.hpp"

namespace baryfit {

/// Support selection used on the step right after a fallback weight choice.
enum class FallbackMode { probabilistic, relative };

/// Accepts "probabilistic" or "relative"; throws DataError otherwise.
FallbackMode parse_fallback_mode(std::string_view name);

struct NlaaaConfig {
    double tol = 1e-12;
    std::size_t max_degree = 30;
    RefineConfig refine;
    FallbackMode fallback_mode = FallbackMode::probabilistic;
    std::uint64_t rng_seed = 0;
};

struct WeightChoice {
    CVector weights;
    Branch branch = Branch::fallback;
    double full_sq_err = 0.0;
};

/**
 * Chooses the weights of one NL-AAA step.
 *
 * Candidates are the best SK iterate, one WF step from `w_prev_ext`, a full WF
 * run seeded by whichever of those two has the smaller active error, and
 * `w_prev_ext` itself. The candidate with the smallest full-data squared
 * error wins; if none beats `w_prev_ext` strictly, `w_prev_ext` is returned
 * with Branch::fallback.
 *
 * `w_prev_ext` is the previous weight vector with a trailing zero for the
 * support point just added. `data` carries the current partition; full-data
 * errors run over all of its samples, the SK/WF solves over the active ones.
 */
WeightChoice select_weights(const SupportSet& supports, const SampleSet& data, const CVector& w_prev_ext,
                            const RefineConfig& cfg);

/// Support selection after a fallback step. Probabilistic mode draws an active
/// index with probability proportional to |r - H| (uniform if all errors are
/// zero); relative mode takes the argmax of |r - H| / |H| over active samples
/// with H != 0, lowest index on ties.
std::size_t fallback_greedy(const RationalModel& model, const SampleSet& data, FallbackMode mode,
                            std::mt19937_64& rng);

/// Probabilities used by the probabilistic fallback for the given model.
std::vector<double> fallback_probabilities(const RationalModel& model, const SampleSet& data);

/// NL-AAA: greedy interpolation with SK/WF weight refinement. The normalized
/// full-data l2 error in the returned trace is non-increasing.
FitResult nlaaa_fit(const SampleSet& data, const NlaaaConfig& cfg);

}  // namespace baryfit

#endif
