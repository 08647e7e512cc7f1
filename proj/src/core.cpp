#include "baryfit/core.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace baryfit {

namespace {

bool complex_less(Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

// Rows are reported 1-based.
void check_distinct(std::span<const Complex> pts, const char* what) {
    std::vector<std::size_t> order(pts.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return complex_less(pts[a], pts[b]); });
    for (std::size_t n = 1; n < order.size(); ++n) {
        if (pts[order[n]] == pts[order[n - 1]]) {
            std::size_t a = std::min(order[n], order[n - 1]);
            std::size_t b = std::max(order[n], order[n - 1]);
            std::ostringstream msg;
            msg << "duplicate " << what << " at rows " << a + 1 << " and " << b + 1;
            throw DataError(msg.str());
        }
    }
}

}  // namespace

bool is_finite(Complex z) noexcept { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// ---------------------------------------------------------------------------
// SampleSet

SampleSet::SampleSet(std::vector<Complex> points, std::vector<Complex> values)
    : points_(std::move(points)), values_(std::move(values)) {
    if (points_.empty()) throw DataError("sample set is empty");
    if (points_.size() != values_.size()) throw DataError("sample points and values differ in length");
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (!is_finite(points_[i]) || !is_finite(values_[i])) {
            throw DataError("non-finite sample at row " + std::to_string(i + 1));
        }
    }
    check_distinct(points_, "sample points");
    active_.assign(points_.size(), true);
    active_count_ = points_.size();
}

std::vector<std::size_t> SampleSet::active_indices() const {
    std::vector<std::size_t> idx;
    idx.reserve(active_count_);
    for (std::size_t i = 0; i < active_.size(); ++i)
        if (active_[i]) idx.push_back(i);
    return idx;
}

std::vector<Complex> SampleSet::active_points() const {
    std::vector<Complex> out;
    out.reserve(active_count_);
    for (std::size_t i = 0; i < active_.size(); ++i)
        if (active_[i]) out.push_back(points_[i]);
    return out;
}

std::vector<Complex> SampleSet::active_values() const {
    std::vector<Complex> out;
    out.reserve(active_count_);
    for (std::size_t i = 0; i < active_.size(); ++i)
        if (active_[i]) out.push_back(values_[i]);
    return out;
}

SampleSet SampleSet::with_interpolated(std::size_t i) const {
    if (!is_active(i)) throw DomainError("sample " + std::to_string(i) + " is already interpolated");
    SampleSet copy = *this;
    copy.active_[i] = false;
    --copy.active_count_;
    return copy;
}

// ---------------------------------------------------------------------------
// RationalModel

RationalModel RationalModel::constant(Complex value) {
    if (!is_finite(value)) throw DataError("constant model value is not finite");
    RationalModel m;
    m.kind_ = Kind::constant;
    m.constant_ = value;
    return m;
}

RationalModel RationalModel::barycentric(std::vector<Complex> supports, std::vector<Complex> values,
                                         std::vector<Complex> weights) {
    if (supports.empty()) throw DataError("barycentric model needs at least one support point");
    if (supports.size() != values.size() || supports.size() != weights.size())
        throw DataError("supports, values and weights differ in length");
    bool any_nonzero = false;
    for (std::size_t j = 0; j < supports.size(); ++j) {
        if (!is_finite(supports[j]) || !is_finite(values[j]) || !is_finite(weights[j]))
            throw DataError("non-finite model parameter at index " + std::to_string(j));
        any_nonzero = any_nonzero || weights[j] != Complex{};
    }
    if (!any_nonzero) throw DataError("all barycentric weights are zero");
    check_distinct(supports, "support points");

    RationalModel m;
    m.kind_ = Kind::barycentric;
    m.supports_ = std::move(supports);
    m.values_ = std::move(values);
    m.weights_ = std::move(weights);
    return m;
}

RationalModel RationalModel::barycentric(const SupportSet& supports, const CVector& weights) {
    std::vector<Complex> w(weights.data(), weights.data() + weights.size());
    return barycentric(supports.points, supports.values, std::move(w));
}

CVector RationalModel::weight_vector() const {
    return Eigen::Map<const CVector>(weights_.data(), static_cast<Eigen::Index>(weights_.size()));
}

// ---------------------------------------------------------------------------
// Evaluation

NumDen num_den(std::span<const Complex> weights, std::span<const Complex> supports,
               std::span<const Complex> values, Complex z) {
    NumDen nd{};
    for (std::size_t j = 0; j < supports.size(); ++j) {
        if (z == supports[j]) throw DomainError("num_den: z coincides with a support point");
        Complex c = weights[j] / (z - supports[j]);
        nd.num += c * values[j];
        nd.den += c;
    }
    return nd;
}

NumDen num_den(const CVector& weights, const SupportSet& supports, Complex z) {
    return num_den(std::span<const Complex>(weights.data(), static_cast<std::size_t>(weights.size())),
                   supports.points, supports.values, z);
}

namespace {

Complex eval_barycentric(std::span<const Complex> weights, std::span<const Complex> supports,
                         std::span<const Complex> values, Complex z) {
    Complex num{}, den{};
    for (std::size_t j = 0; j < supports.size(); ++j) {
        if (z == supports[j]) {
            if (weights[j] != Complex{}) return values[j];
            continue;
        }
        Complex c = weights[j] / (z - supports[j]);
        num += c * values[j];
        den += c;
    }
    if (den == Complex{}) throw NumericalError("pole at evaluation point: denominator vanishes");
    return num / den;
}

}  // namespace

Complex eval(const RationalModel& model, Complex z) {
    if (model.is_constant()) return model.constant_value();
    return eval_barycentric(model.weights(), model.supports(), model.values(), z);
}

Complex eval(const SupportSet& supports, const CVector& weights, Complex z) {
    return eval_barycentric(std::span<const Complex>(weights.data(), static_cast<std::size_t>(weights.size())),
                            supports.points, supports.values, z);
}

// ---------------------------------------------------------------------------
// Realization

Complex Realization::transfer(Complex z) const {
    CMatrix pencil = z * E - A;
    CVector x = pencil.partialPivLu().solve(b);
    return c.cwiseProduct(x).sum();
}

Realization realize(const RationalModel& model) {
    if (model.is_constant() || model.size() == 0)
        throw DomainError("realization requires a barycentric model with at least one support point");

    const auto k = static_cast<Eigen::Index>(model.size());
    auto lam = model.supports();
    auto h = model.values();
    auto w = model.weights();

    Realization re;
    re.E = CMatrix::Zero(k, k);
    re.A = CMatrix::Zero(k, k);
    re.b = CVector::Zero(k);
    re.c = CVector::Zero(k);

    // Rows 1..k-1 force (z - λ_1) x_1 = (z - λ_{i+1}) x_{i+1}, so x_j = t / (z - λ_j).
    for (Eigen::Index i = 0; i + 1 < k; ++i) {
        re.E(i, 0) = 1.0;
        re.E(i, i + 1) = -1.0;
        re.A(i, 0) = lam[0];
        re.A(i, i + 1) = -lam[static_cast<std::size_t>(i + 1)];
    }
    // Last row fixes t = 1 / d(z); the output row then reads off n(z) t.
    for (Eigen::Index j = 0; j < k; ++j) {
        const auto sj = static_cast<std::size_t>(j);
        re.A(k - 1, j) = -w[sj];
        re.c(j) = h[sj] * w[sj];
    }
    re.b(k - 1) = 1.0;
    return re;
}

}  // namespace baryfit
