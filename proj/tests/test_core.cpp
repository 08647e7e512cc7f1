#include <gtest/gtest.h>

#include "baryfit/core.hpp"
#include "test_support.hpp"

using namespace baryfit;
using baryfit::testing::random_complex;

namespace {

RationalModel two_point() { return RationalModel::barycentric({1.0, -1.0}, {2.0, 4.0}, {1.0, 1.0}); }

// Direct evaluation of the barycentric quotient, no special cases.
Complex brute_eval(const std::vector<Complex>& lam, const std::vector<Complex>& h, const std::vector<Complex>& w,
                   Complex z) {
    Complex n{}, d{};
    for (std::size_t j = 0; j < lam.size(); ++j) {
        n += w[j] * h[j] / (z - lam[j]);
        d += w[j] / (z - lam[j]);
    }
    return n / d;
}

}  // namespace

TEST(SampleSet, RejectsDuplicatesWithRowNumbers) {
    try {
        SampleSet s({1.0, 2.0, 1.0}, {0.0, 0.0, 0.0});
        FAIL() << "no exception";
    } catch (const DataError& e) {
        const std::string msg = e.what();
        EXPECT_NE(msg.find('1'), std::string::npos);
        EXPECT_NE(msg.find('3'), std::string::npos);
    }
}

TEST(SampleSet, RejectsEmptyMismatchedAndNonFinite) {
    EXPECT_THROW(SampleSet({}, {}), DataError);
    EXPECT_THROW(SampleSet({1.0, 2.0}, {1.0}), DataError);
    EXPECT_THROW(SampleSet({1.0}, {Complex(std::nan(""), 0.0)}), DataError);
    EXPECT_THROW(SampleSet({Complex(INFINITY, 0.0)}, {1.0}), DataError);
}

TEST(SampleSet, InterpolationPartition) {
    const SampleSet s({0.0, 1.0, 2.0}, {5.0, 6.0, 7.0});
    const SampleSet t = s.with_interpolated(1);
    EXPECT_EQ(s.active_count(), 3u);
    EXPECT_EQ(t.active_count(), 2u);
    EXPECT_FALSE(t.is_active(1));
    EXPECT_EQ(t.active_indices(), (std::vector<std::size_t>{0, 2}));
    EXPECT_EQ(t.active_values(), (std::vector<Complex>{5.0, 7.0}));
    EXPECT_THROW(t.with_interpolated(1), DomainError);
}

TEST(RationalModel, ValidatesConstruction) {
    EXPECT_THROW(RationalModel::barycentric({1.0, 1.0}, {0.0, 0.0}, {1.0, 1.0}), DataError);
    EXPECT_THROW(RationalModel::barycentric({1.0}, {0.0, 0.0}, {1.0}), DataError);
    EXPECT_THROW(RationalModel::barycentric({1.0, 2.0}, {0.0, 0.0}, {0.0, 0.0}), DataError);
    const auto m = two_point();
    EXPECT_EQ(m.size(), 2u);
    EXPECT_EQ(m.degree(), 1u);
    EXPECT_EQ(RationalModel::constant(3.0).degree(), 0u);
}

TEST(Eval, OnePointModelIsConstant) {
    const auto m = RationalModel::barycentric({0.0}, {5.0}, {1.0});
    EXPECT_EQ(eval(m, 2.0), Complex(5.0));
}

TEST(Eval, SupportPointReturnsStoredValue) { EXPECT_EQ(eval(two_point(), 1.0), Complex(2.0)); }

TEST(Eval, HandValue) { EXPECT_NEAR(std::abs(eval(two_point(), 2.0) - 2.5), 0.0, 1e-15); }

TEST(Eval, ConstantModel) { EXPECT_EQ(eval(RationalModel::constant({1.0, 2.0}), 9.0), Complex(1.0, 2.0)); }

TEST(Eval, ZeroWeightSupportIsSkipped) {
    const auto m = RationalModel::barycentric({1.0, -1.0, 0.5}, {2.0, 4.0, 100.0}, {1.0, 1.0, 0.0});
    EXPECT_NEAR(std::abs(eval(m, 0.5) - eval(two_point(), 0.5)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(eval(m, 2.0) - 2.5), 0.0, 1e-15);
}

TEST(Eval, VanishingDenominatorThrows) { EXPECT_THROW(eval(two_point(), 0.0), NumericalError); }

TEST(NumDen, HandValues) {
    const std::vector<Complex> w1{1.0}, l1{0.0}, h1{5.0};
    auto nd = num_den(w1, l1, h1, 2.0);
    EXPECT_EQ(nd.num, Complex(2.5));
    EXPECT_EQ(nd.den, Complex(0.5));

    const std::vector<Complex> w{1.0, 1.0}, l{1.0, -1.0}, h{2.0, 4.0};
    nd = num_den(w, l, h, 0.0);
    EXPECT_EQ(nd.num, Complex(2.0));
    EXPECT_EQ(nd.den, Complex(0.0));

    const std::vector<Complex> zero{0.0, 0.0};
    nd = num_den(zero, l, h, 3.0);
    EXPECT_EQ(nd.num, Complex(0.0));
    EXPECT_EQ(nd.den, Complex(0.0));

    EXPECT_THROW(num_den(w, l, h, 1.0), DomainError);
}

TEST(EvalProperty, InterpolatesAndMatchesBruteForce) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t k = 1 + rng() % 8;
        std::vector<Complex> lam, h, w;
        for (std::size_t j = 0; j < k; ++j) {
            lam.push_back(random_complex(rng));
            h.push_back(random_complex(rng));
            w.push_back(random_complex(rng));
        }
        const auto m = RationalModel::barycentric(lam, h, w);
        for (std::size_t j = 0; j < k; ++j) EXPECT_EQ(eval(m, lam[j]), h[j]);
        const Complex z = random_complex(rng) * 3.0;
        const Complex ref = brute_eval(lam, h, w, z);
        EXPECT_LE(std::abs(eval(m, z) - ref), 1e-12 * (1 + std::abs(ref)));
    }
}

TEST(EvalProperty, ScaleInvariance) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Complex> lam, h, w, ws;
        const Complex c = random_complex(rng) + Complex(0.1, 0.0);
        for (int j = 0; j < 5; ++j) {
            lam.push_back(random_complex(rng));
            h.push_back(random_complex(rng));
            w.push_back(random_complex(rng));
            ws.push_back(c * w.back());
        }
        const auto a = RationalModel::barycentric(lam, h, w);
        const auto b = RationalModel::barycentric(lam, h, ws);
        const Complex z = random_complex(rng) * 2.0;
        EXPECT_LE(std::abs(eval(a, z) - eval(b, z)), 1e-11 * (1 + std::abs(eval(a, z))));
    }
}

// For k <= 4 the barycentric form times prod(z - λ_j) is a polynomial ratio of
// degree <= k-1; the number of poles of r never exceeds k-1.
TEST(EvalProperty, DegreeAtMostKMinusOne) {
    std::mt19937_64 rng(13);
    for (std::size_t k = 1; k <= 4; ++k) {
        std::vector<Complex> lam, h, w;
        for (std::size_t j = 0; j < k; ++j) {
            lam.push_back(random_complex(rng));
            h.push_back(random_complex(rng));
            w.push_back(random_complex(rng));
        }
        const auto m = RationalModel::barycentric(lam, h, w);
        // Fit P/Q of degree k-1 through 2k-1 points and confirm it reproduces r elsewhere:
        // solve P(z_i) - r_i Q(z_i) = 0 with Q monic in the top coefficient.
        const Eigen::Index n = static_cast<Eigen::Index>(k);
        const Eigen::Index unknowns = 2 * n - 1;
        CMatrix A(unknowns, unknowns);
        CVector rhs(unknowns);
        std::vector<Complex> zs;
        for (Eigen::Index i = 0; i < unknowns; ++i) zs.push_back(Complex(2.0 + 0.3 * i, 0.7 - 0.1 * i));
        for (Eigen::Index i = 0; i < unknowns; ++i) {
            const Complex r = eval(m, zs[static_cast<std::size_t>(i)]);
            Complex zp = 1.0;
            for (Eigen::Index p = 0; p < n; ++p) {
                A(i, p) = zp;
                if (p < n - 1) A(i, n + p) = -r * zp;
                zp *= zs[static_cast<std::size_t>(i)];
            }
            rhs(i) = r * std::pow(zs[static_cast<std::size_t>(i)], static_cast<int>(n - 1));
        }
        const CVector c = A.fullPivLu().solve(rhs);
        for (int t = 0; t < 5; ++t) {
            const Complex z = random_complex(rng) * 3.0;
            Complex P{}, Q{}, zp = 1.0;
            for (Eigen::Index p = 0; p < n; ++p) {
                P += c(p) * zp;
                Q += (p < n - 1 ? c(n + p) : Complex(1.0)) * zp;
                zp *= z;
            }
            const Complex r = eval(m, z);
            EXPECT_LE(std::abs(P / Q - r), 1e-8 * (1 + std::abs(r))) << "k=" << k;
        }
    }
}

TEST(Realize, OnePointHandSolve) {
    const auto m = RationalModel::barycentric({1.0}, {2.0}, {3.0});
    const auto re = realize(m);
    EXPECT_NEAR(std::abs(re.transfer(0.0) - 2.0), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(re.transfer({5.0, -2.0}) - 2.0), 0.0, 1e-14);
    EXPECT_EQ(re.b, CVector::Unit(1, 0));
}

TEST(Realize, TwoPointHandSolve) {
    const auto re = realize(two_point());
    // Independent 2x2 solve of (zE - A) x = b followed by c^T x.
    const Complex z = 2.0;
    const CMatrix K = z * re.E - re.A;
    const Complex det = K(0, 0) * K(1, 1) - K(0, 1) * K(1, 0);
    const Complex x0 = (re.b(0) * K(1, 1) - K(0, 1) * re.b(1)) / det;
    const Complex x1 = (K(0, 0) * re.b(1) - re.b(0) * K(1, 0)) / det;
    EXPECT_NEAR(std::abs(re.c(0) * x0 + re.c(1) * x1 - 2.5), 0.0, 1e-14);
    EXPECT_EQ(re.b, CVector::Unit(2, 1));
}

TEST(Realize, ConstantModelRejected) { EXPECT_THROW(realize(RationalModel::constant(1.0)), DomainError); }

TEST(RealizeProperty, TransferMatchesEval) {
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t k = 1 + rng() % 10;
        std::vector<Complex> lam, h, w;
        for (std::size_t j = 0; j < k; ++j) {
            lam.push_back(random_complex(rng));
            h.push_back(random_complex(rng));
            w.push_back(random_complex(rng));
        }
        const auto m = RationalModel::barycentric(lam, h, w);
        const auto re = realize(m);
        for (int p = 0; p < 10; ++p) {
            const Complex z = random_complex(rng) * 3.0;
            const Complex r = eval(m, z);
            EXPECT_LE(std::abs(re.transfer(z) - r), 1e-8 * std::max(1.0, std::abs(r)));
        }
    }
}
