#pragma once

// Combinatorics of the K-type lattice for scalar functions on S^p x S^q.
//
// A K-type V(j,k) = E(j) (x) F(k) pairs spherical harmonics of order j on S^p
// with order k on S^q. The proper conformal factor cos(tau)cos(rho) moves
// V(j,k) to the four diagonal neighbours V(j+-1, k+-1), so j+k mod 2 is
// preserved and the lattice splits into two invariant parity classes.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "errors.hpp"
#include "half_integer.hpp"

namespace intertwine {

/// Dimensions of the two sphere factors.
class Signature {
public:
    Signature(int p, int q) : p_(p), q_(q)
    {
        if (p < 1) throw InvalidArgument("signature requires p >= 1, got p = " + std::to_string(p));
        if (q < 1) throw InvalidArgument("signature requires q >= 1, got q = " + std::to_string(q));
    }

    int p() const { return p_; }
    int q() const { return q_; }
    int n() const { return p_ + q_; }

    friend bool operator==(const Signature&, const Signature&) = default;

private:
    int p_;
    int q_;
};

enum class Sphere { first, second };

/// Lattice point (j,k); J and K are the shifted half-integer parameters.
struct KType {
    int j = 0;
    int k = 0;

    int parity() const { return (j + k) % 2; }

    HalfInt J(const Signature& sig) const { return HalfInt::from_twice(2 * j + sig.p() - 1); }
    HalfInt K(const Signature& sig) const { return HalfInt::from_twice(2 * k + sig.q() - 1); }

    std::string to_string() const { return "(" + std::to_string(j) + "," + std::to_string(k) + ")"; }

    friend auto operator<=>(const KType&, const KType&) = default;
};

inline KType make_ktype(int j, int k)
{
    if (j < 0 || k < 0)
        throw InvalidArgument("K-type orders must be nonnegative, got " + KType{j, k}.to_string());
    return KType{j, k};
}

/// Quadrant of a neighbour edge: the signs of (dj, dk).
enum class Direction : std::uint8_t { plus_plus, plus_minus, minus_plus, minus_minus };

inline constexpr std::array<Direction, 4> all_directions = {
    Direction::plus_plus, Direction::plus_minus, Direction::minus_plus, Direction::minus_minus};

constexpr int dj(Direction d) { return d == Direction::plus_plus || d == Direction::plus_minus ? 1 : -1; }
constexpr int dk(Direction d) { return d == Direction::plus_plus || d == Direction::minus_plus ? 1 : -1; }

constexpr Direction reverse(Direction d)
{
    switch (d) {
    case Direction::plus_plus: return Direction::minus_minus;
    case Direction::plus_minus: return Direction::minus_plus;
    case Direction::minus_plus: return Direction::plus_minus;
    case Direction::minus_minus: return Direction::plus_plus;
    }
    return d;
}

inline const char* to_string(Direction d)
{
    switch (d) {
    case Direction::plus_plus: return "++";
    case Direction::plus_minus: return "+-";
    case Direction::minus_plus: return "-+";
    case Direction::minus_minus: return "--";
    }
    return "?";
}

inline KType step(KType v, Direction d) { return KType{v.j + dj(d), v.k + dk(d)}; }

inline bool has_neighbor(KType v, Direction d) { return v.j + dj(d) >= 0 && v.k + dk(d) >= 0; }

struct Neighbor {
    KType type;
    Direction direction;
};

/// Existing neighbours of v, in the fixed order ++, +-, -+, --.
inline std::vector<Neighbor> neighbors(KType v)
{
    std::vector<Neighbor> out;
    out.reserve(4);
    for (Direction d : all_directions)
        if (has_neighbor(v, d)) out.push_back({step(v, d), d});
    return out;
}

/// Eigenvalue order(d - 1 + order) of the Laplacian on order-th harmonics of S^d.
inline std::int64_t laplacian_eigenvalue(const Signature& sig, Sphere sphere, int order)
{
    if (order < 0) throw InvalidArgument("harmonic order must be nonnegative");
    const std::int64_t d = sphere == Sphere::first ? sig.p() : sig.q();
    return static_cast<std::int64_t>(order) * (d - 1 + order);
}

/// Eigenvalue of the Bochner Laplacian of the Riemannian product on V(j,k).
inline std::int64_t bochner_eigenvalue(const Signature& sig, KType v)
{
    return laplacian_eigenvalue(sig, Sphere::first, v.j) + laplacian_eigenvalue(sig, Sphere::second, v.k);
}

/// N_beta - N_alpha.
inline std::int64_t n_difference(const Signature& sig, KType alpha, KType beta)
{
    return bochner_eigenvalue(sig, beta) - bochner_eigenvalue(sig, alpha);
}

/// ½ N|^beta_alpha along a neighbour edge, read off the direction tag:
/// dj*J + dk*K + 1 at alpha.
inline HalfInt half_n_difference(const Signature& sig, KType alpha, Direction d)
{
    return dj(d) * alpha.J(sig) + dk(d) * alpha.K(sig) + HalfInt::from_int(1);
}

/// Scalar curvature of S^p x S^q with the metric -g_{S^p} + g_{S^q}.
inline std::int64_t scalar_curvature(const Signature& sig)
{
    const std::int64_t p = sig.p(), q = sig.q();
    return q * (q - 1) - p * (p - 1);
}

/// Normalisation base of a parity class: (0,0) for even, (1,0) for odd.
inline KType parity_base(int parity)
{
    if (parity != 0 && parity != 1) throw InvalidArgument("parity must be 0 or 1");
    return parity == 0 ? KType{0, 0} : KType{1, 0};
}

}  // namespace intertwine
