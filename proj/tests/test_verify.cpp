#include <gtest/gtest.h>

#include <cmath>

#include "intertwine/verify.hpp"

using namespace intertwine;

TEST(CheckIntertwining, Examples)
{
    const Signature sig(1, 3);
    const auto f = ZonalFunction::random(sig, 8, 8, 2024);
    const auto identity = check_intertwining(sig, SpectralOrder(0.0), f);
    EXPECT_TRUE(identity.pass);
    EXPECT_LT(identity.max_residual, 1e-15);

    const auto generic = check_intertwining(sig, SpectralOrder(0.37), f);
    EXPECT_TRUE(generic.pass) << generic.max_residual << " at " << generic.worst_location;
    EXPECT_GT(generic.evaluated, 0);

    for (int p = 1; p <= 4; ++p)
        for (int q = 1; q <= 4; ++q) {
            const auto one = ZonalFunction::basis(Signature(p, q), {0, 0}, 0, 0);
            const auto rep = check_intertwining(Signature(p, q), SpectralOrder(0.37), one, 1e-12);
            EXPECT_TRUE(rep.pass) << rep.max_residual;
        }
}

TEST(CheckIntertwining, SingularOrders)
{
    for (int p = 1; p <= 3; ++p)
        for (int q = 1; q <= 3; ++q)
            for (double r : {1.5, 1.0, 2.0, -2.5}) {
                const Signature sig(p, q);
                const auto rep = check_intertwining(sig, SpectralOrder(r), ZonalFunction::random(sig, 8, 8, 5));
                EXPECT_TRUE(rep.pass) << p << "," << q << " r=" << r << ": " << rep.max_residual << " at "
                                      << rep.worst_location;
            }
}

// Flipping the sign of r on one side must break the relation.
TEST(CheckIntertwining, DetectsWrongSpectrum)
{
    const Signature sig(2, 3);
    const auto f = ZonalFunction::random(sig, 6, 6, 8);
    const SpectralOrder r(0.37);
    const auto even = intertwinor_spectrum(sig, -r, 7, 7, 0);
    const auto odd = intertwinor_spectrum(sig, -r, 7, 7, 1);
    const auto wf = multiply_by_varpi(f);
    const auto lhs = detail::apply_diagonal(apply_T_via_lemma(f) + (2.5 - 0.37) * wf, even, odd);
    const auto af = detail::apply_diagonal(f, even, odd);
    const auto rhs = apply_T_via_lemma(af) + (2.5 + 0.37) * multiply_by_varpi(af);
    EXPECT_GT((lhs - rhs).sup_norm(), 1e-3);
}

TEST(CheckCommutatorRoute, Examples)
{
    const Signature sig(2, 2);
    const auto grid = make_grid(sig, 9, 9);
    const auto constant = check_lemma1(sig, ZonalFunction::basis(sig, {0, 0}, 0, 0), grid);
    EXPECT_TRUE(constant.pass);
    EXPECT_LT(constant.max_residual, 1e-15);

    const auto random = check_lemma1(sig, ZonalFunction::random(sig, 8, 8, 17), grid);
    EXPECT_TRUE(random.pass) << random.max_residual;

    EXPECT_THROW(check_lemma1(sig, ZonalFunction::random(sig, 8, 8, 17), make_grid(sig, 2, 2)), GridTooCoarse);
}

// (p+q) varpi phi + 2 T phi = N(varpi phi) - varpi N phi for phi = phi_10,
// with T phi taken from the grid and projected back.
TEST(CheckCommutatorRoute, FirstBasisFunction)
{
    for (int p = 1; p <= 4; ++p)
        for (int q = 1; q <= 4; ++q) {
            const Signature sig(p, q);
            const auto phi = ZonalFunction::basis(sig, {1, 0}, 1, 0);
            const auto grid = make_grid(sig, 2, 1);
            const auto t_phi = project(apply_T_numeric(phi, grid), grid, 2, 1);
            const auto wphi = multiply_by_varpi(phi);
            const auto lhs = static_cast<double>(p + q) * wphi + 2.0 * t_phi;
            const auto rhs = apply_N(wphi) - multiply_by_varpi(apply_N(phi));
            EXPECT_LT((lhs - rhs).sup_norm(), 1e-13) << p << "," << q;
        }
}

TEST(CheckMethodAgreement, Examples)
{
    const auto torus = check_method_agreement(Signature(1, 1), SpectralOrder(0.5), 4, 4);
    EXPECT_TRUE(torus.pass);
    const auto rec = recursion_spectrum(Signature(1, 1), SpectralOrder(0.5), 4, 4, 0);
    const auto cf = closed_form_spectrum(Signature(1, 1), SpectralOrder(0.5), 4, 4, 0);
    EXPECT_DOUBLE_EQ(*rec.value({1, 1}), 3.0);
    EXPECT_NEAR(*cf.value({1, 1}), 3.0, 1e-14);

    const auto rep = check_method_agreement(Signature(3, 2), SpectralOrder(2.25), 12, 12);
    EXPECT_TRUE(rep.pass) << rep.max_residual << " at " << rep.worst_location;
    EXPECT_LE(rep.max_residual, 1e-10);

    for (double r : {1.5, 1.0, 2.0, 3.0, -0.8}) {
        const auto singular = check_method_agreement(Signature(2, 1), SpectralOrder(r), 12, 12);
        EXPECT_TRUE(singular.pass) << r << ": " << singular.max_residual << " at " << singular.worst_location;
    }
}

TEST(CheckMethodAgreement, FactorizedProportionalToConformalLaplacian)
{
    for (int p = 1; p <= 4; ++p)
        for (int q = 1; q <= 4; ++q)
            for (int parity : {0, 1}) {
                const Signature sig(p, q);
                const auto t = factorized_spectrum(sig, 1, 8, 8, parity);
                const double c = parity_constant(sig, 1, parity).value;
                for (const auto& [v, e] : t.entries) {
                    const double J = v.j + 0.5 * (p - 1), K = v.k + 0.5 * (q - 1);
                    EXPECT_NEAR(e.value, c * (K * K - J * J), 1e-12 * std::fabs(c) * std::max(1.0, K * K + J * J));
                }
            }
}

TEST(CheckFactorization, Sweep)
{
    for (int p = 1; p <= 4; ++p)
        for (int q = 1; q <= 4; ++q)
            for (int r = 1; r <= 3; ++r) {
                const auto rep = check_corollary(Signature(p, q), r, 12, 12);
                EXPECT_TRUE(rep.pass) << p << "," << q << " r=" << r << ": " << rep.max_residual << " "
                                      << rep.worst_location << " " << rep.note;
            }
}

TEST(CheckTransitionLaw, Sweep)
{
    for (int p = 1; p <= 4; ++p)
        for (int q = 1; q <= 4; ++q)
            for (double r : {0.37, 1.5, -0.8, 2.25}) {
                const auto rep = check_transition_law(Signature(p, q), SpectralOrder(r), 12, 12);
                EXPECT_TRUE(rep.pass) << p << "," << q << " r=" << r << ": " << rep.max_residual << " "
                                      << rep.worst_location;
            }
}

TEST(CheckInversion, Examples)
{
    const auto rep = check_inversion(Signature(2, 3), SpectralOrder(1.5), 12, 12);
    EXPECT_TRUE(rep.pass);
    EXPECT_GT(rep.skipped, 0);
    EXPECT_TRUE(check_inversion(Signature(1, 3), SpectralOrder(0.37), 12, 12).pass);
}

TEST(CheckLoopConsistency, Examples)
{
    const auto rep = check_loop_consistency(Signature(2, 2), SpectralOrder(0.37), 6, 6, 6);
    EXPECT_TRUE(rep.pass) << rep.max_residual;
    EXPECT_GT(rep.evaluated, 100);
}

TEST(CheckConformalLaplacian, Examples)
{
    for (auto [p, q] : {std::pair{1, 3}, {2, 5}, {3, 3}, {4, 1}}) {
        const auto rep = check_conformal_laplacian(Signature(p, q), 10, 10);
        EXPECT_TRUE(rep.pass);
        EXPECT_EQ(rep.max_residual, 0.0);
        EXPECT_EQ(rep.evaluated, 122);
    }
}
