#pragma once

// Numerical checks of the defining identities of the intertwinor and of the
// agreement between the independent ways of computing its spectrum.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "closedform.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "quadrature.hpp"
#include "spectrum.hpp"
#include "zonal.hpp"

namespace intertwine {

struct VerificationReport {
    std::string check;
    int p = 0;
    int q = 0;
    std::optional<double> r;
    int jmax = 0;
    int kmax = 0;
    double max_residual = 0.0;
    std::string worst_location;
    bool pass = false;
    double tolerance = 0.0;
    std::optional<std::uint64_t> seed;
    /// Quantities compared, and those excluded as singular.
    long evaluated = 0;
    long skipped = 0;
    std::string note;
};

inline constexpr double residual_floor = 1e-14;

namespace detail {

inline VerificationReport start_report(std::string check, const Signature& sig, std::optional<double> r, int jmax,
                                       int kmax, double tol)
{
    VerificationReport rep;
    rep.check = std::move(check);
    rep.p = sig.p();
    rep.q = sig.q();
    rep.r = r;
    rep.jmax = jmax;
    rep.kmax = kmax;
    rep.tolerance = tol;
    return rep;
}

inline void record(VerificationReport& rep, double residual, const std::string& where)
{
    if (std::isnan(residual)) residual = std::numeric_limits<double>::infinity();
    if (rep.worst_location.empty() || residual > rep.max_residual) {
        rep.max_residual = residual;
        rep.worst_location = where;
    }
}

inline VerificationReport& finish(VerificationReport& rep)
{
    rep.pass = rep.max_residual <= rep.tolerance;
    return rep;
}

inline double relative_difference(double a, double b)
{
    if (a == b) return 0.0;
    return std::fabs(a - b) / std::max({std::fabs(a), std::fabs(b), residual_floor});
}

inline ZonalFunction apply_diagonal(const ZonalFunction& f, const SpectrumTable& even, const SpectrumTable& odd)
{
    Eigen::MatrixXd c = f.coeffs();
    for (int j = 0; j <= f.jmax(); ++j)
        for (int k = 0; k <= f.kmax(); ++k) {
            const KType v{j, k};
            const auto mu = (v.parity() == 0 ? even : odd).value(v);
            if (!mu) throw PoleAtKType("intertwinor eigenvalue unavailable at " + v.to_string());
            c(j, k) *= *mu;
        }
    return {f.sig(), std::move(c)};
}

}  // namespace detail

/// A(T + (n/2 - r) varpi) f  versus  (T + (n/2 + r) varpi) A f, with A acting
/// diagonally by intertwinor_spectrum on each parity class. All operators are
/// exact on coefficient arrays, so every output coefficient is compared.
inline VerificationReport check_intertwining(const Signature& sig, const SpectralOrder& r, const ZonalFunction& f,
                                             double tol = 1e-9)
{
    auto rep = detail::start_report("intertwining", sig, r.value(), f.jmax(), f.kmax(), tol);
    const int jx = std::max(f.jmax() + 1, 1), kx = std::max(f.kmax() + 1, 1);
    const auto even = intertwinor_spectrum(sig, r, jx, kx, 0);
    const auto odd = intertwinor_spectrum(sig, r, jx, kx, 1);

    const double half_n = 0.5 * sig.n();
    const auto wf = multiply_by_varpi(f);
    const auto lhs = detail::apply_diagonal(apply_T_via_lemma(f) + (half_n - r.value()) * wf, even, odd);
    const auto af = detail::apply_diagonal(f, even, odd);
    const auto rhs = apply_T_via_lemma(af) + (half_n + r.value()) * multiply_by_varpi(af);

    double a_scale = 0.0;
    for (const auto* t : {&even, &odd})
        for (const auto& [v, e] : t->entries) a_scale = std::max(a_scale, std::fabs(e.value));
    const double scale = std::max(f.sup_norm() * a_scale, residual_floor);

    const Eigen::MatrixXd diff = lhs.coeffs() - rhs.coeffs();
    rep.max_residual = 0.0;
    for (int j = 0; j < diff.rows(); ++j)
        for (int k = 0; k < diff.cols(); ++k) {
            ++rep.evaluated;
            detail::record(rep, std::fabs(diff(j, k)) / scale, KType{j, k}.to_string());
        }
    return detail::finish(rep);
}

/// Commutator route for grad_T against direct differentiation on a grid.
inline VerificationReport check_lemma1(const Signature& sig, const ZonalFunction& f, const QuadratureGrid& grid,
                                       double tol = 1e-8)
{
    auto rep = detail::start_report("lemma1", sig, std::nullopt, f.jmax(), f.kmax(), tol);
    if (!grid.resolves(f.jmax() + 1, f.kmax() + 1))
        throw GridTooCoarse("lemma1 grid does not resolve degree (" + std::to_string(f.jmax() + 1) + "," +
                            std::to_string(f.kmax() + 1) + ")");
    const auto direct = apply_T_numeric(f, grid);
    const auto via_commutator = evaluate(apply_T_via_lemma(f), grid);
    const double scale = std::max(f.sup_norm(), residual_floor);
    rep.max_residual = 0.0;
    for (int i = 0; i < direct.rows(); ++i)
        for (int l = 0; l < direct.cols(); ++l) {
            ++rep.evaluated;
            detail::record(rep, std::fabs(direct(i, l) - via_commutator(i, l)) / scale,
                           "node(" + std::to_string(i) + "," + std::to_string(l) + ")");
        }
    return detail::finish(rep);
}

/// For positive integer r: C_lead * F(v) / factorized(v) against
/// parity_constant, over every K-type where the v-dependent Gamma columns F
/// are finite and the factorised value is nonzero. C_lead is the leading
/// Laurent coefficient of the parity-class Gamma columns, which is the plain
/// value when they are regular.
inline VerificationReport check_corollary(const Signature& sig, int r, int jmax, int kmax, double tol = 1e-10)
{
    auto rep = detail::start_report("corollary", sig, r, jmax, kmax, tol);
    const SpectralOrder order(r);
    rep.max_residual = 0.0;
    for (int parity : {0, 1}) {
        const ParityConstant c = parity_constant(sig, r, parity);
        const LaurentValue c_lead = parity_gamma_laurent(sig, order, parity);
        if (c.is_limit) rep.note += "parity " + std::to_string(parity) + " uses the limit constant; ";
        for (int j = 0; j <= jmax; ++j)
            for (int k = 0; k <= kmax; ++k) {
                const KType v{j, k};
                if (v.parity() != parity) continue;
                const double fac = factorized_eigenvalue(sig, r, v);
                double f;
                try {
                    f = ktype_gamma_ratio(sig, order, v);
                } catch (const PoleAtKType&) {
                    ++rep.skipped;
                    continue;
                }
                if (fac == 0.0) {
                    ++rep.skipped;
                    continue;
                }
                ++rep.evaluated;
                const double ratio = c_lead.lead.to_double() * f / fac;
                detail::record(rep, detail::relative_difference(ratio, c.value), v.to_string());
            }
    }
    if (rep.evaluated < 2) {
        rep.max_residual = std::numeric_limits<double>::infinity();
        rep.note += "fewer than two comparable K-types";
    }
    return detail::finish(rep);
}

/// Recursion (skipping singular edges) against the base-normalised closed
/// form. The K-types the recursion cannot reach must be exactly those
/// predicted from the singular lattice lines; everything it reaches must
/// agree with the closed form. Integer r additionally runs check_corollary.
inline VerificationReport check_method_agreement(const Signature& sig, const SpectralOrder& r, int jmax, int kmax,
                                                 double tol = 1e-10)
{
    auto rep = detail::start_report("method-agreement", sig, r.value(), jmax, kmax, tol);
    rep.max_residual = 0.0;
    long structural = 0;
    for (int parity : {0, 1}) {
        const auto rec = recursion_spectrum(sig, r, jmax, kmax, parity, {.policy = SingularEdgePolicy::skip});
        const auto cf = closed_form_spectrum(sig, r, jmax, kmax, parity);
        for (const auto& [v, entry] : rec.entries) {
            const bool reached = entry.is_finite();
            if (reached == predicted_unreachable(sig, r, v)) {
                ++structural;
                detail::record(rep, std::numeric_limits<double>::infinity(),
                               v.to_string() + " reachability differs from prediction");
                continue;
            }
            if (!reached) {
                ++rep.skipped;
                continue;
            }
            const auto closed = cf.value(v);
            ++rep.evaluated;
            if (!closed) {
                ++structural;
                detail::record(rep, std::numeric_limits<double>::infinity(),
                               v.to_string() + " closed form has a pole where the recursion is finite");
                continue;
            }
            detail::record(rep, detail::relative_difference(entry.value, *closed), v.to_string());
        }
    }
    if (structural > 0) rep.note += std::to_string(structural) + " structural mismatches; ";
    if (r.is_integer()) {
        const auto cor = check_corollary(sig, r.as_integer(), jmax, kmax, tol);
        rep.evaluated += cor.evaluated;
        detail::record(rep, cor.max_residual, "corollary " + cor.worst_location);
        rep.note += "corollary: " + std::to_string(cor.evaluated) + " K-types; " + cor.note;
    }
    return detail::finish(rep);
}

/// z_spectral(beta)/z_spectral(alpha) against the transition ratio on every
/// regular edge inside the box. Edges where either value is a pole are
/// compared through the leading Laurent terms when their orders match.
inline VerificationReport check_transition_law(const Signature& sig, const SpectralOrder& r, int jmax, int kmax,
                                               double tol = 1e-10)
{
    auto rep = detail::start_report("transition-law", sig, r.value(), jmax, kmax, tol);
    rep.max_residual = 0.0;
    for (int j = 0; j <= jmax; ++j)
        for (int k = 0; k <= kmax; ++k) {
            const KType alpha{j, k};
            for (const auto& [beta, d] : neighbors(alpha)) {
                if (!in_box(beta, jmax, kmax)) continue;
                if (classify_edge(sig, alpha, d, r) != EdgeKind::regular) {
                    ++rep.skipped;
                    continue;
                }
                const double t = transition_ratio(sig, alpha, d, r);
                const std::string where = describe_edge(alpha, d);
                double za = 0.0, zb = 0.0;
                bool direct = true;
                try {
                    za = z_spectral(sig, r, alpha);
                    zb = z_spectral(sig, r, beta);
                } catch (const PoleAtKType&) {
                    direct = false;
                }
                if (direct && za != 0.0) {
                    ++rep.evaluated;
                    detail::record(rep, detail::relative_difference(zb / za, t), where);
                    continue;
                }
                const auto la = gamma_ratio_laurent(sig, r, alpha);
                const auto lb = gamma_ratio_laurent(sig, r, beta);
                if (la.order != lb.order) {
                    // A regular edge never changes the pole order.
                    detail::record(rep, std::numeric_limits<double>::infinity(), where + " pole order jumps");
                    continue;
                }
                ++rep.evaluated;
                detail::record(rep, detail::relative_difference((lb.lead / la.lead).to_double(), t), where);
            }
        }
    return detail::finish(rep);
}

/// Z(r) Z(-r) = 1 wherever both are finite.
inline VerificationReport check_inversion(const Signature& sig, const SpectralOrder& r, int jmax, int kmax,
                                          double tol = 1e-12)
{
    auto rep = detail::start_report("inversion", sig, r.value(), jmax, kmax, tol);
    rep.max_residual = 0.0;
    for (int j = 0; j <= jmax; ++j)
        for (int k = 0; k <= kmax; ++k) {
            const KType v{j, k};
            double product;
            try {
                product = inversion_check(sig, r, v);
            } catch (const PoleAtKType&) {
                ++rep.skipped;
                continue;
            }
            ++rep.evaluated;
            detail::record(rep, std::fabs(product - 1.0), v.to_string());
        }
    return detail::finish(rep);
}

/// Transition-ratio products around every closed walk of length <= max_length
/// that stays inside the box and uses only regular edges.
inline VerificationReport check_loop_consistency(const Signature& sig, const SpectralOrder& r, int jmax, int kmax,
                                                 int max_length = 8, double tol = 1e-12)
{
    auto rep = detail::start_report("loop-consistency", sig, r.value(), jmax, kmax, tol);
    rep.max_residual = 0.0;
    std::vector<Direction> path;
    path.reserve(static_cast<std::size_t>(max_length));

    for (int j0 = 0; j0 <= jmax; ++j0)
        for (int k0 = 0; k0 <= kmax; ++k0) {
            const KType start{j0, k0};
            std::function<void(KType, double)> walk = [&](KType at, double product) {
                const int len = static_cast<int>(path.size());
                if (len > 0 && at == start) {
                    ++rep.evaluated;
                    const double residual = std::fabs(product - 1.0);
                    if (residual > rep.max_residual) {
                        std::string where = start.to_string() + " ";
                        for (Direction d : path) where += to_string(d);
                        detail::record(rep, residual, where);
                    }
                }
                if (len == max_length) return;
                for (Direction d : all_directions) {
                    if (!has_neighbor(at, d)) continue;
                    const KType next = step(at, d);
                    if (!in_box(next, jmax, kmax)) continue;
                    if (std::max(std::abs(next.j - start.j), std::abs(next.k - start.k)) > max_length - len - 1)
                        continue;
                    if (classify_edge(sig, at, d, r) != EdgeKind::regular) {
                        ++rep.skipped;
                        continue;
                    }
                    path.push_back(d);
                    walk(next, product * transition_ratio(sig, at, d, r));
                    path.pop_back();
                }
            };
            walk(start, 1.0);
        }
    return detail::finish(rep);
}

/// factorized_eigenvalue(r = 1) against the conformal Laplacian, and the
/// scalar-curvature identity, in exact integer arithmetic. The residual is
/// the number of mismatches.
inline VerificationReport check_conformal_laplacian(const Signature& sig, int jmax, int kmax)
{
    auto rep = detail::start_report("conformal-laplacian", sig, 1.0, jmax, kmax, 0.0);
    long mismatches = 0;
    const std::int64_t n = sig.n(), p = sig.p(), q = sig.q();
    ++rep.evaluated;
    // (n-2)/(4(n-1)) Scal = ((q-1)^2 - (p-1)^2)/4, cleared of denominators.
    if ((n - 2) * scalar_curvature(sig) != (n - 1) * ((q - 1) * (q - 1) - (p - 1) * (p - 1))) {
        ++mismatches;
        rep.worst_location = "scalar curvature identity";
    }
    for (int j = 0; j <= jmax; ++j)
        for (int k = 0; k <= kmax; ++k) {
            const KType v{j, k};
            ++rep.evaluated;
            if (factorized_eigenvalue_scaled(sig, 1, v) != conformal_laplacian_quadrupled(sig, v)) {
                ++mismatches;
                if (rep.worst_location.empty()) rep.worst_location = v.to_string();
            }
        }
    rep.max_residual = static_cast<double>(mismatches);
    return detail::finish(rep);
}

}  // namespace intertwine
