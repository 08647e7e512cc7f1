#include "baryfit/datasets.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace baryfit {

namespace {

double squared_error_over(const RationalModel& model, const SampleSet& data, bool active_only) {
    double sum = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (active_only && !data.is_active(i)) continue;
        Complex r;
        try {
            r = eval(model, data.point(i));
        } catch (const NumericalError&) {
            return std::numeric_limits<double>::infinity();
        }
        sum += std::norm(r - data.value(i));
    }
    return std::isfinite(sum) ? sum : std::numeric_limits<double>::infinity();
}

double squared_error_over(const SupportSet& supports, const CVector& weights, const SampleSet& data,
                          bool active_only) {
    double sum = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (active_only && !data.is_active(i)) continue;
        Complex r;
        try {
            r = eval(supports, weights, data.point(i));
        } catch (const NumericalError&) {
            return std::numeric_limits<double>::infinity();
        }
        sum += std::norm(r - data.value(i));
    }
    return std::isfinite(sum) ? sum : std::numeric_limits<double>::infinity();
}

}  // namespace

MetricPair metrics(const RationalModel& model, const SampleSet& data) {
    double num2 = 0.0, den2 = 0.0, num_max = 0.0, den_max = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const Complex H = data.value(i);
        const double err = std::abs(H - eval(model, data.point(i)));
        num2 += err * err;
        den2 += std::norm(H);
        num_max = std::max(num_max, err);
        den_max = std::max(den_max, std::abs(H));
    }
    if (den2 == 0.0 || den_max == 0.0)
        throw NumericalError("metrics: data values are all zero, normalization undefined");
    return {std::sqrt(num2) / std::sqrt(den2), num_max / den_max};
}

double active_squared_error(const RationalModel& model, const SampleSet& data) {
    return squared_error_over(model, data, true);
}

double active_squared_error(const SupportSet& supports, const CVector& weights, const SampleSet& data) {
    return squared_error_over(supports, weights, data, true);
}

double full_squared_error(const RationalModel& model, const SampleSet& data) {
    return squared_error_over(model, data, false);
}

double full_squared_error(const SupportSet& supports, const CVector& weights, const SampleSet& data) {
    return squared_error_over(supports, weights, data, false);
}

BuiltinFunction parse_builtin(std::string_view name) {
    if (name == "abs") return BuiltinFunction::abs;
    if (name == "relu") return BuiltinFunction::relu;
    if (name == "abs_sin3pi") return BuiltinFunction::abs_sin3pi;
    if (name == "triwave") return BuiltinFunction::triwave;
    throw DataError("unknown builtin function '" + std::string(name) +
                    "' (expected abs, relu, abs_sin3pi or triwave)");
}

std::string_view builtin_name(BuiltinFunction fn) {
    switch (fn) {
        case BuiltinFunction::abs: return "abs";
        case BuiltinFunction::relu: return "relu";
        case BuiltinFunction::abs_sin3pi: return "abs_sin3pi";
        case BuiltinFunction::triwave: return "triwave";
    }
    return "";
}

double builtin_value(BuiltinFunction fn, double x) {
    switch (fn) {
        case BuiltinFunction::abs: return std::abs(x);
        case BuiltinFunction::relu: return std::max(x, 0.0);
        case BuiltinFunction::abs_sin3pi: return std::abs(std::sin(3.0 * std::numbers::pi * x));
        case BuiltinFunction::triwave: return 2.0 * std::abs(3.0 * x - std::floor(3.0 * x + 0.5));
    }
    return 0.0;
}

std::vector<double> symmetric_grid(std::size_t count) {
    if (count < 2) throw DataError("grid needs at least 2 points");
    std::vector<double> x(count);
    const double span = static_cast<double>(count - 1);
    for (std::size_t j = 0; j < count; ++j) x[j] = -1.0 + 2.0 * static_cast<double>(j) / span;
    // Mirror the left half so x[j] + x[count-1-j] == 0 holds exactly.
    for (std::size_t j = 0; j < count / 2; ++j) x[count - 1 - j] = -x[j];
    if (count % 2 == 1) x[count / 2] = 0.0;
    return x;
}

SampleSet sample_builtin(BuiltinFunction fn, std::size_t count) {
    const auto x = symmetric_grid(count);
    std::vector<Complex> pts, vals;
    pts.reserve(count);
    vals.reserve(count);
    for (double xi : x) {
        pts.emplace_back(xi, 0.0);
        vals.emplace_back(builtin_value(fn, xi), 0.0);
    }
    return SampleSet(std::move(pts), std::move(vals));
}

}  // namespace baryfit
