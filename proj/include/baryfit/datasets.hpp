#ifndef BARYFIT_DATASETS_HPP
#define BARYFIT_DATASETS_HPP

#include <string>
#include <string_view>

#include "baryfit/core.hpp"

namespace baryfit {

/// Normalized discrete errors over a full sample set.
struct MetricPair {
    double l2 = 0.0;    ///< ||H - r||_2 / ||H||_2
    double linf = 0.0;  ///< max|H - r| / max|H|
};

/// Throws NumericalError when every H(z_i) is zero.
MetricPair metrics(const RationalModel& model, const SampleSet& data);

/// sum over active samples of |r(z_i) - H(z_i)|^2; +inf if r has a pole on a sample.
double active_squared_error(const RationalModel& model, const SampleSet& data);
double active_squared_error(const SupportSet& supports, const CVector& weights, const SampleSet& data);

/// Same sum over every sample. Support points with nonzero weight contribute
/// exactly zero; zero-weight supports contribute their actual residual.
double full_squared_error(const RationalModel& model, const SampleSet& data);
double full_squared_error(const SupportSet& supports, const CVector& weights, const SampleSet& data);

enum class BuiltinFunction { abs, relu, abs_sin3pi, triwave };

/// Accepts "abs", "relu", "abs_sin3pi", "triwave"; throws DataError otherwise.
BuiltinFunction parse_builtin(std::string_view name);
std::string_view builtin_name(BuiltinFunction fn);

double builtin_value(BuiltinFunction fn, double x);

/// `count` equidistant points x_j = -1 + 2j/(count-1) on [-1, 1] with
/// mirrored halves negated so the grid is exactly symmetric.
std::vector<double> symmetric_grid(std::size_t count);

/// Throws DataError for count < 2.
SampleSet sample_builtin(BuiltinFunction fn, std::size_t count);

}  // namespace baryfit

#endif
