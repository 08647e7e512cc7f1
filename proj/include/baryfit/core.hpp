#ifndef BARYFIT_CORE_HPP
#define BARYFIT_CORE_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace baryfit {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: duplicate points, size mismatches, bad files.
class DataError : public Error {
public:
    using Error::Error;
};

/// An argument outside an operation's domain (e.g. z on a support point).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A numerical failure: pole at an evaluation point, undefined normalization.
class NumericalError : public Error {
public:
    using Error::Error;
};

bool is_finite(Complex z) noexcept;

/**
 * Sampled data {(z_i, H(z_i))} together with the partition into active
 * samples and interpolated samples (those promoted to support points).
 *
 * Instances are immutable; moving a sample to the interpolated set yields a
 * new SampleSet.
 */
class SampleSet {
public:
    /// Throws DataError on empty input, length mismatch, non-finite entries
    /// or duplicate points (the message lists the offending row numbers).
    SampleSet(std::vector<Complex> points, std::vector<Complex> values);

    std::size_t size() const noexcept { return points_.size(); }
    std::span<const Complex> points() const noexcept { return points_; }
    std::span<const Complex> values() const noexcept { return values_; }
    Complex point(std::size_t i) const { return points_.at(i); }
    Complex value(std::size_t i) const { return values_.at(i); }

    bool is_active(std::size_t i) const { return active_.at(i); }
    const std::vector<bool>& active_mask() const noexcept { return active_; }
    std::size_t active_count() const noexcept { return active_count_; }

    /// Indices of active samples in increasing order.
    std::vector<std::size_t> active_indices() const;
    std::vector<Complex> active_points() const;
    std::vector<Complex> active_values() const;

    /// Copy with sample i moved to the interpolated set. Throws DomainError
    /// if i is already interpolated.
    SampleSet with_interpolated(std::size_t i) const;

private:
    std::vector<Complex> points_;
    std::vector<Complex> values_;
    std::vector<bool> active_;
    std::size_t active_count_ = 0;
};

/// Support points λ_j and interpolated values h_j of a barycentric basis.
struct SupportSet {
    std::vector<Complex> points;
    std::vector<Complex> values;

    std::size_t size() const noexcept { return points.size(); }
};

/**
 * A rational function either as a constant (degree-0 start of the greedy
 * loop) or in interpolatory barycentric form
 *
 *     r(z) = sum_j w_j h_j / (z - λ_j)  /  sum_j w_j / (z - λ_j).
 */
class RationalModel {
public:
    enum class Kind { constant, barycentric };

    static RationalModel constant(Complex value);
    /// Throws DataError on length mismatch, duplicate supports, non-finite
    /// entries or an all-zero weight vector.
    static RationalModel barycentric(std::vector<Complex> supports, std::vector<Complex> values,
                                     std::vector<Complex> weights);
    static RationalModel barycentric(const SupportSet& supports, const CVector& weights);

    Kind kind() const noexcept { return kind_; }
    bool is_constant() const noexcept { return kind_ == Kind::constant; }
    Complex constant_value() const noexcept { return constant_; }

    std::span<const Complex> supports() const noexcept { return supports_; }
    std::span<const Complex> values() const noexcept { return values_; }
    std::span<const Complex> weights() const noexcept { return weights_; }
    CVector weight_vector() const;
    SupportSet support_set() const { return {supports_, values_}; }

    /// Number of support points k (0 for the constant variant).
    std::size_t size() const noexcept { return supports_.size(); }
    /// k-1 for barycentric models, 0 for constants.
    std::size_t degree() const noexcept { return supports_.empty() ? 0 : supports_.size() - 1; }

private:
    Kind kind_ = Kind::constant;
    Complex constant_{};
    std::vector<Complex> supports_;
    std::vector<Complex> values_;
    std::vector<Complex> weights_;
};

/// Numerator n(z) = wᵀp(z) and denominator d(z) = wᵀq(z).
struct NumDen {
    Complex num;
    Complex den;
};

/// Throws DomainError when z coincides with a support point.
NumDen num_den(std::span<const Complex> weights, std::span<const Complex> supports,
               std::span<const Complex> values, Complex z);
NumDen num_den(const CVector& weights, const SupportSet& supports, Complex z);

/// Evaluates the model at z. A support point with nonzero weight returns its
/// stored value; a support point with zero weight is skipped in both sums.
/// Throws NumericalError when the denominator vanishes.
Complex eval(const RationalModel& model, Complex z);

/// Same as eval() for a raw weight vector over a support set.
Complex eval(const SupportSet& supports, const CVector& weights, Complex z);

/// First-order descriptor realization c^T (zE - A)^{-1} b of a barycentric model.
struct Realization {
    CMatrix E;
    CMatrix A;
    CVector b;
    CVector c;

    /// c^T (zE - A)^{-1} b via an LU solve.
    Complex transfer(Complex z) const;
};

/// Builds the arrow-structured realization; throws DomainError for constant models.
Realization realize(const RationalModel& model);

}  // namespace baryfit

#endif
