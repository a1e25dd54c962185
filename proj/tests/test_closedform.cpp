#include <gtest/gtest.h>

#include <cmath>

#include "intertwine/closedform.hpp"

using namespace intertwine;

namespace {

double rel(double a, double b) { return std::fabs(a - b) / std::max(std::fabs(a), std::fabs(b)); }

}  // namespace

TEST(ZSpectral, HighPrecisionOracle)
{
    // 50-digit mpmath evaluations of the eight-Gamma quotient.
    EXPECT_LT(rel(z_spectral(Signature(2, 3), SpectralOrder(0.37), {3, 2}), 0.21140315442861496218), 1e-13);
    EXPECT_LT(rel(z_spectral(Signature(1, 3), SpectralOrder(-0.8), {4, 1}), 0.41923774954627949183), 1e-13);
    EXPECT_LT(rel(z_spectral(Signature(4, 1), SpectralOrder(2.25), {5, 6}), 49.077486353348422314), 1e-13);
}

TEST(ZSpectral, Examples)
{
    for (int p = 1; p <= 5; ++p)
        for (int q = 1; q <= 5; ++q)
            for (double r : {0.37, -0.8, 2.25, 0.61})
                EXPECT_NEAR(z_spectral(Signature(p, q), SpectralOrder(r), {0, 0}), 1.0, 1e-13);
    for (double r : {0.3, -0.45, 2.7})
        EXPECT_NEAR(z_spectral(Signature(1, 1), SpectralOrder(r), {1, 1}), (1 + r) / (1 - r), 1e-13);
    for (int j = 0; j <= 6; ++j)
        for (int k = 0; k <= 6; ++k) EXPECT_EQ(z_spectral(Signature(3, 2), SpectralOrder(0.0), {j, k}), 1.0);
}

TEST(ZSpectral, PoleIsReported)
{
    // p = 2, q = 1, r = 1.5: (eps+(p+q)/2-r)/2 = 0 on the even class.
    EXPECT_THROW(gamma_ratio(Signature(2, 1), SpectralOrder(1.5), {2, 2}), PoleAtKType);
    try {
        gamma_ratio(Signature(2, 1), SpectralOrder(1.5), {2, 2});
    } catch (const PoleAtKType& e) {
        EXPECT_NE(std::string(e.what()).find("(2,2)"), std::string::npos) << e.what();
    }
}

TEST(Laurent, HighPrecisionOracle)
{
    struct Case {
        int p, q;
        double r;
        KType v;
        int order;
        double lead;
    };
    for (const Case& c : {Case{2, 1, 1.5, {0, 0}, 0, 1.0}, Case{2, 1, 1.5, {2, 2}, -1, -7.5},
                          Case{2, 1, 1.5, {3, 1}, -2, 22.5}, Case{1, 1, 1.0, {0, 0}, 0, 1.0},
                          Case{1, 1, 1.0, {2, 0}, -2, 4.0}, Case{1, 1, 1.0, {1, 3}, -2, 8.0}}) {
        const auto l = gamma_ratio_laurent(Signature(c.p, c.q), SpectralOrder(c.r), c.v);
        EXPECT_EQ(l.order, c.order) << c.v.to_string();
        EXPECT_NEAR(l.lead.to_double(), c.lead, 1e-12 * std::fabs(c.lead)) << c.v.to_string();
    }
}

TEST(Laurent, MatchesDirectValueAwayFromPoles)
{
    const Signature sig(3, 4);
    for (double r : {0.37, -0.8, 2.25})
        for (int j = 0; j <= 8; ++j)
            for (int k = 0; k <= 8; ++k) {
                const auto l = gamma_ratio_laurent(sig, SpectralOrder(r), {j, k});
                EXPECT_EQ(l.order, 0);
                EXPECT_LT(rel(l.lead.to_double(), gamma_ratio(sig, SpectralOrder(r), {j, k})), 1e-13);
            }
}

TEST(FactorizedEigenvalue, Examples)
{
    for (int p = 1; p <= 4; ++p)
        for (int q = 1; q <= 4; ++q) {
            const Signature sig(p, q);
            for (int j = 0; j <= 8; ++j)
                for (int k = 0; k <= 8; ++k) {
                    const double J = j + 0.5 * (p - 1), K = k + 0.5 * (q - 1);
                    EXPECT_EQ(factorized_eigenvalue(sig, 1, {j, k}), K * K - J * J);
                }
        }
    for (int j = 0; j <= 8; ++j)
        for (int k = 0; k <= 8; ++k)
            EXPECT_EQ(factorized_eigenvalue(Signature(1, 3), 1, {j, k}), (k + 1.0) * (k + 1.0) - j * j);
    EXPECT_EQ(factorized_eigenvalue(Signature(1, 1), 2, {0, 0}), 1.0);
    EXPECT_THROW(factorized_eigenvalue(Signature(1, 1), 0, {0, 0}), InvalidArgument);
}

// Zeros of the factorised value are exactly the K-types on one of its
// linear factors.
TEST(FactorizedEigenvalue, KernelIsPredicted)
{
    for (int p = 1; p <= 4; ++p)
        for (int q = 1; q <= 4; ++q)
            for (int r = 1; r <= 3; ++r) {
                const Signature sig(p, q);
                for (int j = 0; j <= 12; ++j)
                    for (int k = 0; k <= 12; ++k) {
                        const double J = j + 0.5 * (p - 1), K = k + 0.5 * (q - 1);
                        bool on_factor = false;
                        for (int m = 0; m < r; ++m)
                            on_factor = on_factor || K + J + 1 - r + 2 * m == 0 || K - J + 1 - r + 2 * m == 0;
                        EXPECT_EQ(factorized_eigenvalue(sig, r, {j, k}) == 0.0, on_factor);
                    }
            }
}

TEST(ConformalLaplacian, Examples)
{
    EXPECT_EQ(conformal_laplacian_eigenvalue(Signature(1, 3), {0, 0}), 1.0);
    EXPECT_EQ(conformal_laplacian_eigenvalue(Signature(2, 2), {1, 0}), -2.0);
    // K = J: p = 3, q = 1 gives J = j + 1, K = k.
    EXPECT_EQ(conformal_laplacian_eigenvalue(Signature(3, 1), {2, 3}), 0.0);
    for (int j = 0; j <= 12; ++j)
        for (int k = 0; k <= 12; ++k)
            for (int p = 1; p <= 4; ++p)
                for (int q = 1; q <= 4; ++q)
                    EXPECT_EQ(conformal_laplacian_quadrupled(Signature(p, q), {j, k}),
                              factorized_eigenvalue_scaled(Signature(p, q), 1, {j, k}));
}

TEST(ParityConstant, ProbeQuotientIsConstant)
{
    for (int p = 1; p <= 4; ++p)
        for (int q = 1; q <= 4; ++q)
            for (int r = 1; r <= 3; ++r)
                for (int parity : {0, 1}) {
                    const Signature sig(p, q);
                    const auto c = parity_constant(sig, r, parity);
                    if (c.is_limit) continue;
                    int compared = 0;
                    for (int j = 0; j <= 12; ++j)
                        for (int k = 0; k <= 12; ++k) {
                            const KType v{j, k};
                            if (v.parity() != parity || factorized_eigenvalue(sig, r, v) == 0.0) continue;
                            try {
                                const double z = gamma_ratio(sig, SpectralOrder(r), v);
                                EXPECT_LT(rel(z / factorized_eigenvalue(sig, r, v), c.value), 1e-10);
                                ++compared;
                            } catch (const PoleAtKType&) {
                            }
                        }
                    EXPECT_GE(compared, 2);
                }
}

TEST(ParityConstant, SingularCasesUseTheLimit)
{
    // (eps+(p+q)/2-r)/2 = 0 for eps = 0, p = q = 1, r = 1.
    EXPECT_THROW(probe_parity_constant(Signature(1, 1), 1, 0), NoProbeAvailable);
    const auto c = parity_constant(Signature(1, 1), 1, 0);
    EXPECT_TRUE(c.is_limit);
    // Both numerator columns sit on Γ(0) and contribute -2/delta each, so
    // the constant is 4^{-1} * 4 in order -2.
    EXPECT_NEAR(c.value, 1.0, 1e-14);
    EXPECT_EQ(parity_gamma_laurent(Signature(1, 1), SpectralOrder(1), 0).order, -2);

    const auto finite = parity_constant(Signature(2, 4), 2, 0);
    EXPECT_TRUE(std::isfinite(finite.value));
    EXPECT_NE(finite.value, 0.0);
}

TEST(Inversion, Examples)
{
    EXPECT_EQ(inversion_check(Signature(2, 2), SpectralOrder(0.0), {3, 1}), 1.0);
    EXPECT_NEAR(inversion_check(Signature(1, 3), SpectralOrder(0.37), {2, 1}), 1.0, 1e-12);
    EXPECT_NEAR(inversion_check(Signature(2, 3), SpectralOrder(1.5), {3, 2}), 1.0, 1e-12);
}

TEST(ClosedFormSpectrum, BaseNormalisedAndMarksPoles)
{
    const auto t = closed_form_spectrum(Signature(2, 1), SpectralOrder(1.5), 4, 4, 0);
    EXPECT_EQ(t.value({0, 0}), 1.0);
    EXPECT_EQ(t.entries.at({2, 2}).state, EntryState::pole);
    const auto odd = closed_form_spectrum(Signature(3, 2), SpectralOrder(0.37), 6, 6, 1);
    EXPECT_EQ(odd.value({1, 0}), 1.0);
    EXPECT_LT(rel(*odd.value({3, 2}), gamma_ratio(Signature(3, 2), SpectralOrder(0.37), {3, 2}) /
                                          gamma_ratio(Signature(3, 2), SpectralOrder(0.37), {1, 0})),
              1e-13);
}

TEST(IntertwinorSpectrum, AllEntriesFinite)
{
    for (int p = 1; p <= 4; ++p)
        for (int q = 1; q <= 4; ++q)
            for (double r : {0.37, 1.5, -0.8, 2.25, 1.0, 2.0, -1.5})
                for (int parity : {0, 1}) {
                    const auto t = intertwinor_spectrum(Signature(p, q), SpectralOrder(r), 9, 9, parity);
                    bool nonzero = false;
                    for (const auto& [v, e] : t.entries) {
                        EXPECT_TRUE(e.is_finite());
                        EXPECT_TRUE(std::isfinite(e.value));
                        nonzero = nonzero || e.value != 0.0;
                    }
                    EXPECT_TRUE(nonzero);
                }
}
