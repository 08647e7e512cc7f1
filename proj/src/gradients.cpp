#include "baryfit/gradients.hpp"

#include <algorithm>
#include <limits>

#include "baryfit/linalg.hpp"

namespace baryfit {

namespace {

// Per-sample basis data: q = 1/(z - λ), p = h q.
struct Basis {
    CMatrix q;  // rows: active samples
    CMatrix p;
    CVector H;
    std::vector<Complex> z;
};

Basis make_basis(const SupportSet& s, const SampleSet& data) {
    Basis b;
    b.z = data.active_points();
    const auto vals = data.active_values();
    b.q = build_cauchy(b.z, s.points);
    const CVector h = Eigen::Map<const CVector>(s.values.data(), static_cast<Eigen::Index>(s.size()));
    b.p = b.q * h.asDiagonal();
    b.H = Eigen::Map<const CVector>(vals.data(), static_cast<Eigen::Index>(vals.size()));
    return b;
}

void check_sizes(const SupportSet& s, const CVector& w) {
    if (static_cast<std::size_t>(w.size()) != s.size())
        throw DomainError("gradient: weight vector length differs from support count");
}

Complex nonzero_den(Complex d, const Basis& b, Eigen::Index i) {
    if (d == Complex{}) {
        throw NumericalError("denominator vanishes at sample z = (" + std::to_string(b.z[static_cast<std::size_t>(i)].real()) +
                             ", " + std::to_string(b.z[static_cast<std::size_t>(i)].imag()) + ")");
    }
    return d;
}

// Accumulates sum_i a_i conj(e_i) and, separately, sum_i conj(a_i) e_i.
class Accumulator {
public:
    explicit Accumulator(Eigen::Index k) : dw_(CVector::Zero(k)), dwbar_(CVector::Zero(k)) {}

    void add(const CVector& a, Complex e) {
        dw_ += a * std::conj(e);
        dwbar_ += a.conjugate() * e;
    }

    WirtingerGradient result() const { return {dw_, dwbar_}; }

private:
    CVector dw_;
    CVector dwbar_;
};

}  // namespace

double error_nonlinear(const SupportSet& s, const SampleSet& data, const CVector& w) {
    check_sizes(s, w);
    const auto b = make_basis(s, data);
    const CVector n = b.p * w, d = b.q * w;
    double e = 0.0;
    for (Eigen::Index i = 0; i < n.size(); ++i) e += std::norm(n(i) / nonzero_den(d(i), b, i) - b.H(i));
    return e;
}

double error_levy(const SupportSet& s, const SampleSet& data, const CVector& w) {
    check_sizes(s, w);
    const auto b = make_basis(s, data);
    return (b.p * w - (b.q * w).cwiseProduct(b.H)).squaredNorm();
}

double error_sk(const SupportSet& s, const SampleSet& data, const CVector& w, const CVector& w_prev) {
    check_sizes(s, w);
    check_sizes(s, w_prev);
    const auto b = make_basis(s, data);
    const CVector res = b.p * w - (b.q * w).cwiseProduct(b.H);
    const CVector dp = b.q * w_prev;
    double e = 0.0;
    for (Eigen::Index i = 0; i < res.size(); ++i) e += std::norm(res(i)) / std::norm(nonzero_den(dp(i), b, i));
    return e;
}

double error_wf(const SupportSet& s, const SampleSet& data, const CVector& w, const CVector& w_prev) {
    check_sizes(s, w);
    check_sizes(s, w_prev);
    const auto b = make_basis(s, data);
    const CVector n = b.p * w, d = b.q * w;
    const CVector np = b.p * w_prev, dp = b.q * w_prev;
    double e = 0.0;
    for (Eigen::Index i = 0; i < n.size(); ++i) {
        const Complex dpi = nonzero_den(dp(i), b, i);
        const Complex rp = np(i) / dpi;
        e += std::norm(n(i) - rp * d(i) + np(i) - dpi * b.H(i)) / std::norm(dpi);
    }
    return e;
}

WirtingerGradient grad_nonlinear(const SupportSet& s, const SampleSet& data, const CVector& w) {
    check_sizes(s, w);
    const auto b = make_basis(s, data);
    const CVector n = b.p * w, d = b.q * w;
    Accumulator acc(w.size());
    for (Eigen::Index i = 0; i < n.size(); ++i) {
        const Complex di = nonzero_den(d(i), b, i);
        const Complex r = n(i) / di;
        const CVector dr = (b.p.row(i) - r * b.q.row(i)).transpose() / di;
        acc.add(dr, r - b.H(i));
    }
    return acc.result();
}

WirtingerGradient grad_levy(const SupportSet& s, const SampleSet& data, const CVector& w) {
    check_sizes(s, w);
    const auto b = make_basis(s, data);
    const CVector n = b.p * w, d = b.q * w;
    Accumulator acc(w.size());
    for (Eigen::Index i = 0; i < n.size(); ++i) {
        const CVector a = (b.p.row(i) - b.H(i) * b.q.row(i)).transpose();
        acc.add(a, n(i) - d(i) * b.H(i));
    }
    return acc.result();
}

WirtingerGradient grad_levy_rearranged(const SupportSet& s, const SampleSet& data, const CVector& w) {
    check_sizes(s, w);
    const auto b = make_basis(s, data);
    const CVector n = b.p * w, d = b.q * w;
    Accumulator acc(w.size());
    for (Eigen::Index i = 0; i < n.size(); ++i) {
        const Complex di = nonzero_den(d(i), b, i);
        const CVector a = std::norm(di) * (b.p.row(i) - b.H(i) * b.q.row(i)).transpose() / di;
        acc.add(a, n(i) / di - b.H(i));
    }
    return acc.result();
}

WirtingerGradient grad_sk_step(const SupportSet& s, const SampleSet& data, const CVector& w,
                               const CVector& w_prev) {
    check_sizes(s, w);
    check_sizes(s, w_prev);
    const auto b = make_basis(s, data);
    const CVector n = b.p * w, d = b.q * w, dp = b.q * w_prev;
    Accumulator acc(w.size());
    for (Eigen::Index i = 0; i < n.size(); ++i) {
        const double scale = 1.0 / std::norm(nonzero_den(dp(i), b, i));
        const CVector a = scale * (b.p.row(i) - b.H(i) * b.q.row(i)).transpose();
        acc.add(a, n(i) - b.H(i) * d(i));
    }
    return acc.result();
}

WirtingerGradient grad_sk_fixed(const SupportSet& s, const SampleSet& data, const CVector& w) {
    check_sizes(s, w);
    const auto b = make_basis(s, data);
    const CVector n = b.p * w, d = b.q * w;
    Accumulator acc(w.size());
    for (Eigen::Index i = 0; i < n.size(); ++i) {
        const Complex di = nonzero_den(d(i), b, i);
        const CVector a = (b.p.row(i) - b.H(i) * b.q.row(i)).transpose() / di;
        acc.add(a, n(i) / di - b.H(i));
    }
    return acc.result();
}

WirtingerGradient grad_wf_step(const SupportSet& s, const SampleSet& data, const CVector& w,
                               const CVector& w_prev) {
    check_sizes(s, w);
    check_sizes(s, w_prev);
    const auto b = make_basis(s, data);
    const CVector n = b.p * w, d = b.q * w;
    const CVector np = b.p * w_prev, dp = b.q * w_prev;
    Accumulator acc(w.size());
    for (Eigen::Index i = 0; i < n.size(); ++i) {
        const Complex dpi = nonzero_den(dp(i), b, i);
        const Complex rp = np(i) / dpi;
        const CVector a = (b.p.row(i) - rp * b.q.row(i)).transpose() / std::norm(dpi);
        acc.add(a, n(i) - rp * d(i) + np(i) - dpi * b.H(i));
    }
    return acc.result();
}

CVector fd_wirtinger(const std::function<double(const CVector&)>& f, const CVector& w) {
    CVector g(w.size());
    for (Eigen::Index j = 0; j < w.size(); ++j) {
        const double h = 1e-6 * (1.0 + std::abs(w(j)));
        CVector wp = w, wm = w;
        wp(j) += Complex(h, 0.0);
        wm(j) -= Complex(h, 0.0);
        const double dx = (f(wp) - f(wm)) / (2.0 * h);
        wp = w;
        wm = w;
        wp(j) += Complex(0.0, h);
        wm(j) -= Complex(0.0, h);
        const double dy = (f(wp) - f(wm)) / (2.0 * h);
        g(j) = Complex(0.5 * dx, -0.5 * dy);
    }
    return g;
}

double denominator_variation(const SupportSet& s, const CVector& w, std::span<const Complex> probes) {
    check_sizes(s, w);
    if (probes.empty()) throw DomainError("denominator_variation: no probe points");
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (Complex z : probes) {
        const double mag = std::abs(num_den(w, s, z).den);
        lo = std::min(lo, mag);
        hi = std::max(hi, mag);
    }
    return hi / lo;
}

CVector drop_pivot(const CVector& g, Eigen::Index pivot) {
    CVector out(g.size() - 1);
    for (Eigen::Index j = 0, c = 0; j < g.size(); ++j)
        if (j != pivot) out(c++) = g(j);
    return out;
}

}  // namespace baryfit
