#pragma once

// Signed-logarithm arithmetic for products and quotients of Gamma values.

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "errors.hpp"

namespace intertwine {

/// sign * exp(log_magnitude); sign == 0 encodes an exact zero.
struct SignedLogValue {
    double log_magnitude = 0.0;
    int sign = 1;

    static SignedLogValue from_double(double x)
    {
        if (x == 0.0) return {0.0, 0};
        return {std::log(std::fabs(x)), x > 0 ? 1 : -1};
    }

    double to_double() const { return sign == 0 ? 0.0 : sign * std::exp(log_magnitude); }

    SignedLogValue& operator*=(const SignedLogValue& o)
    {
        log_magnitude += o.log_magnitude;
        sign *= o.sign;
        return *this;
    }
    SignedLogValue& operator/=(const SignedLogValue& o)
    {
        if (o.sign == 0) throw InvalidArgument("division by an exact zero");
        log_magnitude -= o.log_magnitude;
        sign *= o.sign;
        return *this;
    }
    friend SignedLogValue operator*(SignedLogValue a, const SignedLogValue& b) { return a *= b; }
    friend SignedLogValue operator/(SignedLogValue a, const SignedLogValue& b) { return a /= b; }
};

namespace detail {

// Lanczos approximation, g = 7, nine terms.
inline double lanczos_log_gamma(double x)
{
    static constexpr double g = 7.0;
    static constexpr std::array<double, 9> c = {
        0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
        771.32342877765313,      -176.61502916214059,   12.507343278686905,
        -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
    const double z = x - 1.0;
    double a = c[0];
    for (std::size_t i = 1; i < c.size(); ++i) a += c[i] / (z + static_cast<double>(i));
    const double t = z + g + 0.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(a);
}

}  // namespace detail

inline constexpr double gamma_pole_tolerance = 1e-12;

/// True if x is within gamma_pole_tolerance of 0, -1, -2, ...
inline bool is_gamma_pole(double x)
{
    const double nearest = std::nearbyint(x);
    return nearest <= 0.0 && std::fabs(x - nearest) <= gamma_pole_tolerance;
}

/// log|Γ(x)| and sign Γ(x). Lanczos for x > 1/2, reflection below.
inline SignedLogValue signed_log_gamma(double x)
{
    if (!std::isfinite(x)) throw InvalidArgument("signed_log_gamma: non-finite argument");
    if (is_gamma_pole(x)) throw PoleAtGamma("Gamma has a pole at x = " + std::to_string(x));
    if (x > 0.5) return {detail::lanczos_log_gamma(x), 1};

    // Γ(x)Γ(1-x) = π / sin(πx)
    // Reduce before scaling by pi so sin stays accurate near the poles.
    const double nearest = std::nearbyint(x);
    const double frac = x - nearest;
    const bool odd = std::fmod(nearest, 2.0) != 0.0;
    const double s = (odd ? -1.0 : 1.0) * std::sin(std::numbers::pi * frac);
    return {std::log(std::numbers::pi) - std::log(std::fabs(s)) - detail::lanczos_log_gamma(1.0 - x),
            s > 0 ? 1 : -1};
}

}  // namespace intertwine
