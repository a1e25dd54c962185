#pragma once

// Gegenbauer polynomials G_j^lambda, lambda = (d-1)/2 for the sphere S^d.
// lambda = 0 (the circle) uses Chebyshev polynomials of the first kind,
// which are the zonal harmonics cos(j tau) on S^1.

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "errors.hpp"
#include "gamma.hpp"

namespace intertwine {

inline double gegenbauer_lambda(int sphere_dim) { return 0.5 * (sphere_dim - 1); }

/// G_0(x), ..., G_degree(x) by the three-term recurrence.
inline std::vector<double> gegenbauer_values(double lambda, int degree, double x)
{
    std::vector<double> g(static_cast<std::size_t>(degree) + 1);
    g[0] = 1.0;
    if (degree == 0) return g;
    if (lambda == 0.0) {
        g[1] = x;
        for (int j = 1; j < degree; ++j) g[j + 1] = 2.0 * x * g[j] - g[j - 1];
        return g;
    }
    g[1] = 2.0 * lambda * x;
    for (int j = 1; j < degree; ++j)
        g[j + 1] = (2.0 * (j + lambda) * x * g[j] - (j + 2.0 * lambda - 1.0) * g[j - 1]) / (j + 1.0);
    return g;
}

/// dG_0/dx, ..., dG_degree/dx via dG_j^l = 2l G_{j-1}^{l+1}, dT_j = j U_{j-1}.
inline std::vector<double> gegenbauer_derivatives(double lambda, int degree, double x)
{
    std::vector<double> d(static_cast<std::size_t>(degree) + 1, 0.0);
    if (degree == 0) return d;
    const bool chebyshev = lambda == 0.0;
    const auto raised = gegenbauer_values(chebyshev ? 1.0 : lambda + 1.0, degree - 1, x);
    for (int j = 1; j <= degree; ++j) d[j] = (chebyshev ? j : 2.0 * lambda) * raised[j - 1];
    return d;
}

/// Coefficients of x*f for f = sum_j c_j G_j^lambda; degree grows by one.
///
///   x G_j = (j+1)/(2(j+lambda)) G_{j+1} + (j+2lambda-1)/(2(j+lambda)) G_{j-1}
///
/// with x T_0 = T_1 and x T_j = (T_{j+1} + T_{j-1})/2 when lambda = 0.
inline std::vector<double> mult_by_cos(double lambda, std::span<const double> c)
{
    if (lambda < 0.0 || std::nearbyint(2.0 * lambda) != 2.0 * lambda)
        throw InvalidArgument("mult_by_cos: lambda must be a nonnegative half-integer");
    std::vector<double> out(c.size() + 1, 0.0);
    for (std::size_t jj = 0; jj < c.size(); ++jj) {
        const double j = static_cast<double>(jj);
        double up, down;
        if (lambda == 0.0) {
            up = jj == 0 ? 1.0 : 0.5;
            down = 0.5;
        } else {
            up = (j + 1.0) / (2.0 * (j + lambda));
            down = (j + 2.0 * lambda - 1.0) / (2.0 * (j + lambda));
        }
        out[jj + 1] += up * c[jj];
        if (jj > 0) out[jj - 1] += down * c[jj];
    }
    return out;
}

/// h_j = int_{-1}^{1} (1-x^2)^{lambda-1/2} G_j(x)^2 dx.
inline double gegenbauer_norm(double lambda, int j)
{
    if (lambda == 0.0) return j == 0 ? std::numbers::pi : std::numbers::pi / 2.0;
    // pi 2^{1-2l} Γ(j+2l) / (j! (j+l) Γ(l)^2)
    const double log_h = std::log(std::numbers::pi) + (1.0 - 2.0 * lambda) * std::log(2.0) +
                         signed_log_gamma(j + 2.0 * lambda).log_magnitude -
                         signed_log_gamma(j + 1.0).log_magnitude - std::log(j + lambda) -
                         2.0 * signed_log_gamma(lambda).log_magnitude;
    return std::exp(log_h);
}

}  // namespace intertwine
