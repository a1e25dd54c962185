#pragma once

// Gauss-Gegenbauer rules for the weight (1-x^2)^{lambda-1/2} on [-1,1], i.e.
// Gauss-Jacobi with alpha = beta = (d-2)/2. In the azimuthal angle this is
// the measure sin^{d-1}(tau) d tau with x = cos(tau).

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"
#include "gamma.hpp"
#include "gegenbauer.hpp"
#include "geometry.hpp"

namespace intertwine {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    int size() const { return static_cast<int>(nodes.size()); }
    /// Highest polynomial degree integrated exactly.
    int exactness() const { return 2 * size() - 1; }
};

namespace detail {

// Off-diagonal of the Jacobi matrix of the orthonormal Gegenbauer family.
inline double gegenbauer_jacobi_offdiag(double lambda, int m)
{
    if (m == 1) return std::sqrt(1.0 / (2.0 * (1.0 + lambda)));
    return std::sqrt(m * (m + 2.0 * lambda - 1.0) / (4.0 * (m + lambda) * (m + lambda - 1.0)));
}

inline double gegenbauer_weight_mass(double lambda)
{
    // sqrt(pi) Γ(lambda+1/2) / Γ(lambda+1)
    return std::exp(0.5 * std::log(std::numbers::pi) + signed_log_gamma(lambda + 0.5).log_magnitude -
                    signed_log_gamma(lambda + 1.0).log_magnitude);
}

// Orthonormal p_0..p_{n} at x, and p_n'(x).
struct OrthonormalValues {
    std::vector<double> p;
    double dpn;
};

inline OrthonormalValues orthonormal_values(double lambda, int n, double x, double mass)
{
    std::vector<double> p(static_cast<std::size_t>(n) + 1), dp(static_cast<std::size_t>(n) + 1);
    p[0] = 1.0 / std::sqrt(mass);
    dp[0] = 0.0;
    double b_prev = 0.0;
    for (int m = 0; m < n; ++m) {
        const double b_next = gegenbauer_jacobi_offdiag(lambda, m + 1);
        const double pm1 = m > 0 ? p[m - 1] : 0.0;
        const double dpm1 = m > 0 ? dp[m - 1] : 0.0;
        p[m + 1] = (x * p[m] - b_prev * pm1) / b_next;
        dp[m + 1] = (p[m] + x * dp[m] - b_prev * dpm1) / b_next;
        b_prev = b_next;
    }
    return {std::move(p), dp[n]};
}

}  // namespace detail

/// n-point Gauss rule for the Gegenbauer weight with parameter lambda.
///
/// Golub-Welsch eigenvalues seed the nodes, a Newton pass on the orthonormal
/// p_n polishes them, and weights are the Christoffel numbers
/// 1 / sum_{m<n} p_m(x_i)^2.
inline QuadratureRule gauss_gegenbauer(double lambda, int n)
{
    if (n < 1) throw InvalidArgument("quadrature rule needs at least one node");
    const double mass = detail::gegenbauer_weight_mass(lambda);

    Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd sub(std::max(n - 1, 0));
    for (int m = 1; m < n; ++m) sub[m - 1] = detail::gegenbauer_jacobi_offdiag(lambda, m);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);

    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = solver.eigenvalues()[i];
        for (int it = 0; it < 3; ++it) {
            const auto v = detail::orthonormal_values(lambda, n, x, mass);
            x -= v.p[n] / v.dpn;
        }
        const auto v = detail::orthonormal_values(lambda, n, x, mass);
        double sum = 0.0;
        for (int m = 0; m < n; ++m) sum += v.p[m] * v.p[m];
        rule.nodes[i] = x;
        rule.weights[i] = 1.0 / sum;
    }
    return rule;
}

/// Tensor-product grid in (cos tau, cos rho) for S^p x S^q.
struct QuadratureGrid {
    Signature sig;
    QuadratureRule tau;
    QuadratureRule rho;

    /// Projection of degree (jdeg, kdeg) functions is exact on this grid.
    bool resolves(int jdeg, int kdeg) const { return tau.size() >= jdeg + 1 && rho.size() >= kdeg + 1; }
};

/// Grid with truncation degree + 4 nodes per direction.
inline QuadratureGrid make_grid(const Signature& sig, int jdeg, int kdeg)
{
    if (jdeg < 0 || kdeg < 0) throw InvalidArgument("grid degrees must be nonnegative");
    return {sig, gauss_gegenbauer(gegenbauer_lambda(sig.p()), jdeg + 4),
            gauss_gegenbauer(gegenbauer_lambda(sig.q()), kdeg + 4)};
}

}  // namespace intertwine
