#pragma once

// Closed-form spectral function of the intertwinor A_{2r}.
//
//          Γ(½(K+J+1+r)) Γ(½(K-J+1+r)) Γ(½(ε-(p-q)/2+1-r)) Γ(½(ε+(p+q)/2-r))
//   Z(v) = ------------------------------------------------------------------
//          Γ(½(K+J+1-r)) Γ(½(K-J+1-r)) Γ(½(ε-(p-q)/2+1+r)) Γ(½(ε+(p+q)/2+r))
//
// For positive integer r the Gamma quotient of the first two columns is a
// Pochhammer product, and Z is proportional to
//
//   prod_{m=0}^{r-1} (K+J+1-r+2m)(K-J+1-r+2m),
//
// the eigenvalue of (C+B-r+1)...(C+B+r-1)(C-B-r+1)...(C-B+r-1) on V(j,k).

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "errors.hpp"
#include "gamma.hpp"
#include "geometry.hpp"
#include "spectral_order.hpp"
#include "spectrum.hpp"

namespace intertwine {

/// x = (shift + r_sign * r) / 2 with a half-integer shift.
struct GammaArgument {
    HalfInt shift;
    int r_sign;
    const char* label;

    double value(const SpectralOrder& r) const { return (shift.value() + r_sign * r.value()) / 2.0; }

    bool is_pole(const SpectralOrder& r) const
    {
        if (const auto& twice = r.twice()) {
            const std::int64_t quad = shift.twice() + r_sign * *twice;  // 4x
            return quad <= 0 && quad % 4 == 0;
        }
        return is_gamma_pole(value(r));
    }

    std::string describe(const SpectralOrder& r) const
    {
        return std::string(label) + " = " + std::to_string(value(r));
    }
};

/// Leading term lead * delta^order of a quantity as r -> r + delta.
struct LaurentValue {
    SignedLogValue lead{0.0, 1};
    int order = 0;

    LaurentValue& operator*=(const LaurentValue& o)
    {
        lead *= o.lead;
        order += o.order;
        return *this;
    }
    LaurentValue& operator/=(const LaurentValue& o)
    {
        lead /= o.lead;
        order -= o.order;
        return *this;
    }
    friend LaurentValue operator*(LaurentValue a, const LaurentValue& b) { return a *= b; }
    friend LaurentValue operator/(LaurentValue a, const LaurentValue& b) { return a /= b; }
};

/// Γ(x0 + s*delta/2) ~ (-1)^m 2 s / (m! delta) near x0 = -m; Γ(x0) otherwise.
inline LaurentValue gamma_laurent(const GammaArgument& arg, const SpectralOrder& r)
{
    if (!arg.is_pole(r)) return {signed_log_gamma(arg.value(r)), 0};
    const double m = -std::nearbyint(arg.value(r));
    const int sign = (std::fmod(m, 2.0) == 0.0 ? 1 : -1) * (arg.r_sign >= 0 ? 1 : -1);
    return {{std::log(2.0) - std::lgamma(m + 1.0), sign}, -1};
}

namespace detail {

struct GammaArguments {
    std::array<GammaArgument, 4> numerator;
    std::array<GammaArgument, 4> denominator;
};

inline GammaArguments gamma_arguments(const Signature& sig, KType v)
{
    const int eps = v.parity();
    const HalfInt sum = v.K(sig) + v.J(sig) + HalfInt::from_int(1);
    const HalfInt diff = v.K(sig) - v.J(sig) + HalfInt::from_int(1);
    const HalfInt c1 = HalfInt::from_twice(2 * eps - sig.p() + sig.q() + 2);
    const HalfInt c2 = HalfInt::from_twice(2 * eps + sig.p() + sig.q());
    return {{{{sum, +1, "(K+J+1+r)/2"},
              {diff, +1, "(K-J+1+r)/2"},
              {c1, -1, "(eps-(p-q)/2+1-r)/2"},
              {c2, -1, "(eps+(p+q)/2-r)/2"}}},
            {{{sum, -1, "(K+J+1-r)/2"},
              {diff, -1, "(K-J+1-r)/2"},
              {c1, +1, "(eps-(p-q)/2+1+r)/2"},
              {c2, +1, "(eps+(p+q)/2+r)/2"}}}};
}

// Columns [first, last) of the Gamma quotient: 0-1 depend on v, 2-3 only on
// the parity class.
inline SignedLogValue gamma_quotient(const Signature& sig, const SpectralOrder& r, KType v, std::size_t first,
                                     std::size_t last)
{
    const auto args = gamma_arguments(sig, v);
    SignedLogValue acc{0.0, 1};
    for (std::size_t i = first; i < last; ++i) {
        for (const auto* arg : {&args.numerator[i], &args.denominator[i]})
            if (arg->is_pole(r))
                throw PoleAtKType("spectral function undefined at " + v.to_string() + " for r = " +
                                  std::to_string(r.value()) + ": Gamma pole at " + arg->describe(r));
        acc *= signed_log_gamma(args.numerator[i].value(r));
        acc /= signed_log_gamma(args.denominator[i].value(r));
    }
    return acc;
}

inline LaurentValue gamma_quotient_laurent(const Signature& sig, const SpectralOrder& r, KType v,
                                           std::size_t first, std::size_t last)
{
    const auto args = gamma_arguments(sig, v);
    LaurentValue acc;
    for (std::size_t i = first; i < last; ++i) {
        acc *= gamma_laurent(args.numerator[i], r);
        acc /= gamma_laurent(args.denominator[i], r);
    }
    return acc;
}

}  // namespace detail

/// The eight-Gamma quotient evaluated directly, for any real r.
inline double gamma_ratio(const Signature& sig, const SpectralOrder& r, KType v)
{
    if (r.is_zero()) return 1.0;
    return detail::gamma_quotient(sig, r, v, 0, 4).to_double();
}

/// The two v-dependent Gamma columns only.
inline double ktype_gamma_ratio(const Signature& sig, const SpectralOrder& r, KType v)
{
    if (r.is_zero()) return 1.0;
    return detail::gamma_quotient(sig, r, v, 0, 2).to_double();
}

/// Leading Laurent term of the eight-Gamma quotient under r -> r + delta.
inline LaurentValue gamma_ratio_laurent(const Signature& sig, const SpectralOrder& r, KType v)
{
    if (r.is_zero()) return {};
    return detail::gamma_quotient_laurent(sig, r, v, 0, 4);
}

/// Leading Laurent term of the parity-class constant (Gamma columns 2-3).
inline LaurentValue parity_gamma_laurent(const Signature& sig, const SpectralOrder& r, int parity)
{
    if (r.is_zero()) return {};
    return detail::gamma_quotient_laurent(sig, r, parity_base(parity), 2, 4);
}

/// 4^r times the eigenvalue of the factorised operator on V(j,k); exact.
inline std::int64_t factorized_eigenvalue_scaled(const Signature& sig, int r, KType v)
{
    if (r < 1) throw InvalidArgument("factorized eigenvalue requires a positive integer r");
    // Doubled factors: 2(K+J+1-r+2m) and 2(K-J+1-r+2m).
    const std::int64_t sum2 = (v.K(sig) + v.J(sig)).twice() + 2 - 2 * r;
    const std::int64_t diff2 = (v.K(sig) - v.J(sig)).twice() + 2 - 2 * r;
    std::int64_t product = 1;
    for (int m = 0; m < r; ++m) product *= (sum2 + 4 * m) * (diff2 + 4 * m);
    return product;
}

inline double factorized_eigenvalue(const Signature& sig, int r, KType v)
{
    return std::ldexp(static_cast<double>(factorized_eigenvalue_scaled(sig, r, v)), -2 * r);
}

/// 4 * (Δ_{S^q} - Δ_{S^p} + ((q-1)^2 - (p-1)^2)/4) on V(j,k); exact.
inline std::int64_t conformal_laplacian_quadrupled(const Signature& sig, KType v)
{
    const std::int64_t p = sig.p(), q = sig.q();
    return 4 * (laplacian_eigenvalue(sig, Sphere::second, v.k) - laplacian_eigenvalue(sig, Sphere::first, v.j)) +
           (q - 1) * (q - 1) - (p - 1) * (p - 1);
}

inline double conformal_laplacian_eigenvalue(const Signature& sig, KType v)
{
    return static_cast<double>(conformal_laplacian_quadrupled(sig, v)) / 4.0;
}

struct ParityConstant {
    double value;
    /// True when no probe K-type was usable and the regularised Gamma
    /// constant was taken instead.
    bool is_limit;
    KType probe;
};

inline constexpr int parity_constant_probe_range = 24;

/// gamma_ratio / factorized_eigenvalue at the first K-type of the parity
/// class (ordered by j+k, then j) where both are finite and nonzero.
inline ParityConstant probe_parity_constant(const Signature& sig, int r, int parity)
{
    const SpectralOrder order(r);
    for (int s = parity; s <= 2 * parity_constant_probe_range; s += 2)
        for (int j = 0; j <= s; ++j) {
            const KType v{j, s - j};
            const double fac = factorized_eigenvalue(sig, r, v);
            if (fac == 0.0) continue;
            try {
                return {gamma_ratio(sig, order, v) / fac, false, v};
            } catch (const PoleAtKType&) {
                continue;
            }
        }
    throw NoProbeAvailable("no K-type of parity " + std::to_string(parity) + " within j+k <= " +
                           std::to_string(2 * parity_constant_probe_range) +
                           " has a finite, nonzero spectral value for r = " + std::to_string(r));
}

/// The constant c_eps with Z = c_eps * factorized_eigenvalue on parity eps.
///
/// Falls back to 4^{-r} times the leading Laurent coefficient of the two
/// parity-class Gamma columns when every probe is singular.
inline ParityConstant parity_constant(const Signature& sig, int r, int parity)
{
    try {
        return probe_parity_constant(sig, r, parity);
    } catch (const NoProbeAvailable&) {
        const LaurentValue c = parity_gamma_laurent(sig, SpectralOrder(r), parity);
        return {std::ldexp(c.lead.to_double(), -2 * r), true, parity_base(parity)};
    }
}

/// Eigenvalue of A_{2r} on V(j,k).
///
/// Positive integer r: parity_constant * factorized_eigenvalue, which
/// continues the Gamma quotient through its matched pole/zero pairs.
/// Otherwise the eight-Gamma quotient; throws PoleAtKType on a pole.
inline double z_spectral(const Signature& sig, const SpectralOrder& r, KType v)
{
    if (r.is_zero()) return 1.0;
    if (r.is_integer()) {
        const int ri = r.as_integer();
        return parity_constant(sig, ri, v.parity()).value * factorized_eigenvalue(sig, ri, v);
    }
    return gamma_ratio(sig, r, v);
}

/// Z(r) Z(-r) from the Gamma quotient; 1 wherever both are finite.
inline double inversion_check(const Signature& sig, const SpectralOrder& r, KType v)
{
    return gamma_ratio(sig, r, v) * gamma_ratio(sig, -r, v);
}

/// Base-normalised closed-form table. Each entry is the limit of
/// Z(r+delta, v) / Z(r+delta, base) as delta -> 0: finite, zero, or a pole.
inline SpectrumTable closed_form_spectrum(const Signature& sig, const SpectralOrder& r, int jmax, int kmax,
                                          int parity)
{
    const KType base = parity_base(parity);
    SpectrumTable table{sig, r, parity, jmax, kmax, base, SpectrumMethod::closed_form, {}};
    const LaurentValue at_base = gamma_ratio_laurent(sig, r, base);
    for (int j = 0; j <= jmax; ++j)
        for (int k = 0; k <= kmax; ++k) {
            const KType v{j, k};
            if (v.parity() != parity) continue;
            const LaurentValue rel = gamma_ratio_laurent(sig, r, v) / at_base;
            if (rel.order < 0)
                table.entries[v] = {EntryState::pole, 0.0};
            else
                table.entries[v] = {EntryState::finite, rel.order > 0 ? 0.0 : rel.lead.to_double()};
        }
    return table;
}

/// parity_constant * factorized_eigenvalue over the box (positive integer r).
inline SpectrumTable factorized_spectrum(const Signature& sig, int r, int jmax, int kmax, int parity)
{
    SpectrumTable table{sig, SpectralOrder(r), parity, jmax, kmax, parity_base(parity),
                        SpectrumMethod::factorized, {}};
    const double c = parity_constant(sig, r, parity).value;
    for (int j = 0; j <= jmax; ++j)
        for (int k = 0; k <= kmax; ++k) {
            const KType v{j, k};
            if (v.parity() == parity) table.entries[v] = {EntryState::finite, c * factorized_eigenvalue(sig, r, v)};
        }
    return table;
}

/// Finite intertwinor eigenvalues on one parity class over the box.
///
/// Positive integer r: the factorised spectrum. Otherwise the base-relative
/// Gamma quotient rescaled by delta^{-m}, m the most negative relative pole
/// order in the box, before taking delta -> 0: entries of order m keep their
/// leading coefficient and all others vanish. Without poles this is the
/// base-normalised spectral function.
inline SpectrumTable intertwinor_spectrum(const Signature& sig, const SpectralOrder& r, int jmax, int kmax,
                                          int parity)
{
    if (r.is_integer()) return factorized_spectrum(sig, r.as_integer(), jmax, kmax, parity);

    const KType base = parity_base(parity);
    SpectrumTable table{sig, r, parity, jmax, kmax, base, SpectrumMethod::closed_form, {}};
    const LaurentValue at_base = gamma_ratio_laurent(sig, r, base);
    std::map<KType, LaurentValue> rel;
    int min_order = std::numeric_limits<int>::max();
    for (int j = 0; j <= jmax; ++j)
        for (int k = 0; k <= kmax; ++k) {
            const KType v{j, k};
            if (v.parity() != parity) continue;
            const LaurentValue value = gamma_ratio_laurent(sig, r, v) / at_base;
            min_order = std::min(min_order, value.order);
            rel.emplace(v, value);
        }
    for (const auto& [v, value] : rel)
        table.entries[v] = {EntryState::finite, value.order == min_order ? value.lead.to_double() : 0.0};
    return table;
}

}  // namespace intertwine
