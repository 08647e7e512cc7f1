#ifndef BARYFIT_GRADIENTS_HPP
#define BARYFIT_GRADIENTS_HPP

#include <functional>
#include <span>

#include "baryfit/core.hpp"

namespace baryfit {

/**
 * Wirtinger derivative dE/dw of a real-valued error E(w, conj(w)), together
 * with the conjugate derivative dE/d(conj w) computed from the conjugated
 * expression. For real E the two satisfy d_wbar == conj(d_w).
 *
 * In real coordinates w_j = x_j + i y_j:
 *   dE/dx_j = 2 Re(d_w[j]),  dE/dy_j = -2 Im(d_w[j]).
 */
struct WirtingerGradient {
    CVector d_w;
    CVector d_wbar;
};

// Scalar error criteria over the active samples of `data`.

/// sum |r(z_i; w) - H_i|^2
double error_nonlinear(const SupportSet& s, const SampleSet& data, const CVector& w);
/// sum |n(z_i; w) - d(z_i; w) H_i|^2
double error_levy(const SupportSet& s, const SampleSet& data, const CVector& w);
/// sum |n(w) - d(w) H|^2 / |d(w_prev)|^2
double error_sk(const SupportSet& s, const SampleSet& data, const CVector& w, const CVector& w_prev);
/// sum |n(w) - r(w_prev) d(w) + n(w_prev) - d(w_prev) H|^2 / |d(w_prev)|^2
double error_wf(const SupportSet& s, const SampleSet& data, const CVector& w, const CVector& w_prev);

// Analytic gradients. Each throws NumericalError naming the sample where a
// required denominator vanishes.

WirtingerGradient grad_nonlinear(const SupportSet& s, const SampleSet& data, const CVector& w);
WirtingerGradient grad_levy(const SupportSet& s, const SampleSet& data, const CVector& w);
/// sum |d|^2 (1/d)(p - H q) conj(r - H); equal to grad_levy wherever d != 0.
WirtingerGradient grad_levy_rearranged(const SupportSet& s, const SampleSet& data, const CVector& w);
WirtingerGradient grad_sk_step(const SupportSet& s, const SampleSet& data, const CVector& w,
                               const CVector& w_prev);
/// Fixed-point form of grad_sk_step(w, w): sum (1/d)(p - H q) conj(r - H).
WirtingerGradient grad_sk_fixed(const SupportSet& s, const SampleSet& data, const CVector& w);
WirtingerGradient grad_wf_step(const SupportSet& s, const SampleSet& data, const CVector& w,
                               const CVector& w_prev);

/// Central differences of a real function of complex weights, packed as the
/// Wirtinger derivative 0.5 (dE/dx - i dE/dy). Step h_j = 1e-6 (1 + |w_j|).
CVector fd_wirtinger(const std::function<double(const CVector&)>& f, const CVector& w);

/// max |d(z)| / min |d(z)| over the probe points. Throws DomainError if a
/// probe hits a support point.
double denominator_variation(const SupportSet& s, const CVector& w, std::span<const Complex> probes);

/// Restriction of a gradient to the coordinates other than `pivot`.
CVector drop_pivot(const CVector& g, Eigen::Index pivot);

}  // namespace baryfit

#endif
