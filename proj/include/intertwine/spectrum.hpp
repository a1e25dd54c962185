#pragma once

// Spectrum-generating recursion on the K-type lattice.
//
// Compressing the intertwining relation from V(j,k) to a neighbour beta gives
//
//     (½N|^beta_alpha + r) mu_alpha = (½N|^beta_alpha - r) mu_beta,
//
// so eigenvalues propagate edge by edge from a normalised base K-type.

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <optional>
#include <span>
#include <string>

#include "errors.hpp"
#include "geometry.hpp"
#include "spectral_order.hpp"

namespace intertwine {

inline constexpr double zero_denominator_tolerance = 1e-12;

enum class EdgeKind { regular, zero_numerator, zero_denominator };

/// Classifies the edge alpha -> step(alpha, d) by the sign structure of
/// (h + r)/(h - r), h = ½N|^beta_alpha. Exact when 2r is an integer.
inline EdgeKind classify_edge(const Signature& sig, KType alpha, Direction d, const SpectralOrder& r)
{
    if (r.is_zero()) return EdgeKind::regular;
    const HalfInt h = half_n_difference(sig, alpha, d);
    if (const auto& twice = r.twice()) {
        if (h.twice() == *twice) return EdgeKind::zero_denominator;
        if (h.twice() == -*twice) return EdgeKind::zero_numerator;
        return EdgeKind::regular;
    }
    if (std::fabs(h.value() - r.value()) <= zero_denominator_tolerance) return EdgeKind::zero_denominator;
    if (std::fabs(h.value() + r.value()) <= zero_denominator_tolerance) return EdgeKind::zero_numerator;
    return EdgeKind::regular;
}

inline std::string describe_edge(KType alpha, Direction d)
{
    return alpha.to_string() + " -> " + step(alpha, d).to_string() + " [" + to_string(d) + "]";
}

/// mu_beta / mu_alpha across the edge alpha -> step(alpha, d).
inline double transition_ratio(const Signature& sig, KType alpha, Direction d, const SpectralOrder& r)
{
    if (!has_neighbor(alpha, d))
        throw InvalidArgument("no neighbour of " + alpha.to_string() + " in direction " + to_string(d));
    if (r.is_zero()) return 1.0;
    switch (classify_edge(sig, alpha, d, r)) {
    case EdgeKind::zero_denominator:
        throw ZeroDenominator("transition ratio singular on edge " + describe_edge(alpha, d) +
                              ": r equals ½N|^beta_alpha");
    case EdgeKind::zero_numerator:
        return 0.0;
    case EdgeKind::regular:
        break;
    }
    const double h = half_n_difference(sig, alpha, d).value();
    return (h + r.value()) / (h - r.value());
}

enum class SpectrumMethod { recursion, closed_form, factorized };

inline const char* to_string(SpectrumMethod m)
{
    switch (m) {
    case SpectrumMethod::recursion: return "recursion";
    case SpectrumMethod::closed_form: return "closed_form";
    case SpectrumMethod::factorized: return "factorized";
    }
    return "?";
}

enum class EntryState { finite, pole, zero_denominator };

struct SpectrumEntry {
    EntryState state = EntryState::finite;
    double value = 0.0;

    bool is_finite() const { return state == EntryState::finite; }
};

/// Intertwinor eigenvalues on one parity class, keyed by K-type.
struct SpectrumTable {
    Signature sig;
    SpectralOrder r;
    int parity;
    int jmax;
    int kmax;
    KType base;
    SpectrumMethod method;
    std::map<KType, SpectrumEntry> entries;

    /// The value at v, or nullopt when v is absent or singular.
    std::optional<double> value(KType v) const
    {
        auto it = entries.find(v);
        if (it == entries.end() || !it->second.is_finite()) return std::nullopt;
        return it->second.value;
    }
};

enum class SingularEdgePolicy {
    /// Any zero-denominator edge inside the box aborts with ZeroDenominator.
    raise,
    /// Zero-denominator edges are not traversed; unreached K-types are
    /// reported with EntryState::zero_denominator.
    skip,
};

struct RecursionOptions {
    double tolerance = 1e-10;
    SingularEdgePolicy policy = SingularEdgePolicy::raise;
    /// Visit neighbours in reverse tag order; the table must not change.
    bool reverse_neighbor_order = false;
};

inline bool in_box(KType v, int jmax, int kmax) { return v.j <= jmax && v.k <= kmax; }

/// Breadth-first propagation of the compressed intertwining relation from
/// the parity base over all same-parity K-types with j <= jmax, k <= kmax.
/// Every edge into an already-valued K-type is checked for consistency.
inline SpectrumTable recursion_spectrum(const Signature& sig, const SpectralOrder& r, int jmax, int kmax,
                                        int parity, const RecursionOptions& options = {})
{
    if (jmax < 1 || kmax < 1) throw InvalidArgument("recursion_spectrum requires jmax >= 1 and kmax >= 1");
    const KType base = parity_base(parity);

    SpectrumTable table{sig, r, parity, jmax, kmax, base, SpectrumMethod::recursion, {}};
    std::map<KType, double> mu;
    mu[base] = 1.0;
    std::deque<KType> queue{base};

    while (!queue.empty()) {
        const KType alpha = queue.front();
        queue.pop_front();
        const double mu_alpha = mu.at(alpha);

        auto nbrs = neighbors(alpha);
        if (options.reverse_neighbor_order) std::reverse(nbrs.begin(), nbrs.end());
        for (const auto& [beta, d] : nbrs) {
            if (!in_box(beta, jmax, kmax)) continue;
            if (classify_edge(sig, alpha, d, r) == EdgeKind::zero_denominator) {
                if (options.policy == SingularEdgePolicy::raise)
                    throw ZeroDenominator("recursion blocked on edge " + describe_edge(alpha, d) +
                                          " at r = " + std::to_string(r.value()));
                continue;
            }
            const double candidate = mu_alpha * transition_ratio(sig, alpha, d, r);
            auto [it, inserted] = mu.try_emplace(beta, candidate);
            if (inserted) {
                queue.push_back(beta);
                continue;
            }
            const double scale = std::max(std::fabs(candidate), std::fabs(it->second));
            if (std::fabs(candidate - it->second) > options.tolerance * scale)
                throw PathInconsistency("paths to " + beta.to_string() + " disagree: " +
                                        std::to_string(it->second) + " vs " + std::to_string(candidate));
        }
    }

    for (int j = 0; j <= jmax; ++j)
        for (int k = 0; k <= kmax; ++k) {
            const KType v{j, k};
            if (v.parity() != parity) continue;
            if (auto it = mu.find(v); it != mu.end())
                table.entries[v] = {EntryState::finite, it->second};
            else
                table.entries[v] = {EntryState::zero_denominator, 0.0};
        }
    return table;
}

namespace detail {

// Moving from level `from` to level `to` (same parity, step 2) in one of the
// two lattice coordinates K+J+1 or K-J+1, does the path cross an edge whose
// lower level equals r (upward) or -r (downward)? Levels are doubled.
inline bool crosses_zero_denominator(std::int64_t from, std::int64_t to, const SpectralOrder& r)
{
    if (r.is_zero() || from == to) return false;
    const std::int64_t lo = std::min(from, to);
    const std::int64_t hi = std::max(from, to);
    const double target = to > from ? r.value() : -r.value();
    if (const auto& twice = r.twice()) {
        const std::int64_t t = to > from ? *twice : -*twice;
        return t >= lo && t <= hi - 4 && (t - lo) % 4 == 0;
    }
    for (std::int64_t level = lo; level <= hi - 4; level += 4)
        if (std::fabs(static_cast<double>(level) / 2.0 - target) <= zero_denominator_tolerance) return true;
    return false;
}

}  // namespace detail

/// Whether the skipping recursion cannot reach v from the parity base.
///
/// Singular edges with a given K+J+1 (or K-J+1) level form complete lattice
/// lines, so reachability is decided by which lines separate v from the base
/// and in which direction they are crossed. Assumes v and the base lie in a
/// box with jmax, kmax >= 1, where every wall-free region is edge-connected.
inline bool predicted_unreachable(const Signature& sig, const SpectralOrder& r, KType v)
{
    const KType base = parity_base(v.parity());
    auto sum_level = [&](KType t) { return (t.K(sig) + t.J(sig)).twice() + 2; };
    auto diff_level = [&](KType t) { return (t.K(sig) - t.J(sig)).twice() + 2; };
    return detail::crosses_zero_denominator(sum_level(base), sum_level(v), r) ||
           detail::crosses_zero_denominator(diff_level(base), diff_level(v), r);
}

/// Product of transition ratios around a closed walk; 1 up to rounding.
inline double loop_consistency(const Signature& sig, const SpectralOrder& r, std::span<const Direction> loop,
                               KType start)
{
    double product = 1.0;
    KType at = start;
    for (Direction d : loop) {
        if (!has_neighbor(at, d))
            throw InvalidArgument("loop leaves the lattice at " + at.to_string() + " via " + to_string(d));
        if (classify_edge(sig, at, d, r) != EdgeKind::regular)
            throw ZeroDenominator("loop uses singular edge " + describe_edge(at, d));
        product *= transition_ratio(sig, at, d, r);
        at = step(at, d);
    }
    if (at != start) throw InvalidArgument("loop does not return to " + start.to_string());
    return product;
}

}  // namespace intertwine
