#pragma once

// Zonal functions on S^p x S^q: functions of the azimuthal angles (tau, rho)
// only, expanded in phi_jk = G_j^{lp}(cos tau) G_k^{lq}(cos rho). Each phi_jk
// spans the zonal line of the K-type V(j,k).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"
#include "gegenbauer.hpp"
#include "geometry.hpp"
#include "quadrature.hpp"

namespace intertwine {

class ZonalFunction {
public:
    ZonalFunction(Signature sig, Eigen::MatrixXd coeffs) : sig_(sig), coeffs_(std::move(coeffs))
    {
        if (coeffs_.rows() < 1 || coeffs_.cols() < 1) throw InvalidArgument("empty coefficient array");
        if (!coeffs_.allFinite()) throw InvalidArgument("zonal coefficients must be finite");
    }

    static ZonalFunction zero(const Signature& sig, int jmax, int kmax)
    {
        check_degrees(jmax, kmax);
        return {sig, Eigen::MatrixXd::Zero(jmax + 1, kmax + 1)};
    }

    /// phi_jk inside a (jmax, kmax) array.
    static ZonalFunction basis(const Signature& sig, KType v, int jmax, int kmax)
    {
        auto f = zero(sig, jmax, kmax);
        if (v.j > jmax || v.k > kmax) throw InvalidArgument("basis K-type outside truncation");
        f.coeffs_(v.j, v.k) = 1.0;
        return f;
    }

    /// Coefficients uniform in [-1, 1] from a seeded 64-bit Mersenne twister.
    static ZonalFunction random(const Signature& sig, int jmax, int kmax, std::uint64_t seed)
    {
        auto f = zero(sig, jmax, kmax);
        std::mt19937_64 gen(seed);
        for (int j = 0; j <= jmax; ++j)
            for (int k = 0; k <= kmax; ++k)
                f.coeffs_(j, k) = 2.0 * std::ldexp(static_cast<double>(gen() >> 11), -53) - 1.0;
        return f;
    }

    const Signature& sig() const { return sig_; }
    int jmax() const { return static_cast<int>(coeffs_.rows()) - 1; }
    int kmax() const { return static_cast<int>(coeffs_.cols()) - 1; }
    const Eigen::MatrixXd& coeffs() const { return coeffs_; }
    double coeff(KType v) const
    {
        return v.j <= jmax() && v.k <= kmax() ? coeffs_(v.j, v.k) : 0.0;
    }

    /// Coefficient sup-norm.
    double sup_norm() const { return coeffs_.cwiseAbs().maxCoeff(); }

    /// Same function in a larger (or equal) truncation.
    ZonalFunction padded(int jmax, int kmax) const
    {
        if (jmax < this->jmax() || kmax < this->kmax()) throw InvalidArgument("padding cannot truncate");
        auto out = zero(sig_, jmax, kmax);
        out.coeffs_.topLeftCorner(coeffs_.rows(), coeffs_.cols()) = coeffs_;
        return out;
    }

    /// Restriction to the K-types of one parity class.
    ZonalFunction parity_component(int parity) const
    {
        auto out = *this;
        for (int j = 0; j <= jmax(); ++j)
            for (int k = 0; k <= kmax(); ++k)
                if ((j + k) % 2 != parity) out.coeffs_(j, k) = 0.0;
        return out;
    }

    ZonalFunction& operator+=(const ZonalFunction& o)
    {
        align(o);
        coeffs_.topLeftCorner(o.coeffs_.rows(), o.coeffs_.cols()) += o.coeffs_;
        return *this;
    }
    ZonalFunction& operator-=(const ZonalFunction& o) { return *this += (-1.0) * o; }
    ZonalFunction& operator*=(double s)
    {
        coeffs_ *= s;
        return *this;
    }
    friend ZonalFunction operator+(ZonalFunction a, const ZonalFunction& b) { return a += b; }
    friend ZonalFunction operator-(ZonalFunction a, const ZonalFunction& b) { return a -= b; }
    friend ZonalFunction operator*(double s, ZonalFunction a) { return a *= s; }

private:
    static void check_degrees(int jmax, int kmax)
    {
        if (jmax < 0 || kmax < 0) throw InvalidArgument("truncation degrees must be nonnegative");
    }

    // Grow to cover o's truncation.
    void align(const ZonalFunction& o)
    {
        if (!(o.sig_ == sig_)) throw InvalidArgument("zonal functions on different signatures");
        if (o.jmax() > jmax() || o.kmax() > kmax()) *this = padded(std::max(jmax(), o.jmax()), std::max(kmax(), o.kmax()));
    }

    Signature sig_;
    Eigen::MatrixXd coeffs_;
};

namespace detail {

// Matrix of multiplication by x on G_0..G_degree, shape (degree+2, degree+1).
inline Eigen::MatrixXd mult_by_cos_matrix(double lambda, int degree)
{
    Eigen::MatrixXd m(degree + 2, degree + 1);
    std::vector<double> unit(static_cast<std::size_t>(degree) + 1, 0.0);
    for (int j = 0; j <= degree; ++j) {
        unit[j] = 1.0;
        const auto col = mult_by_cos(lambda, unit);
        for (int i = 0; i <= degree + 1; ++i) m(i, j) = col[i];
        unit[j] = 0.0;
    }
    return m;
}

}  // namespace detail

/// varpi * f with varpi = cos(tau) cos(rho); both degrees grow by one.
inline ZonalFunction multiply_by_varpi(const ZonalFunction& f)
{
    const auto& sig = f.sig();
    const auto xp = detail::mult_by_cos_matrix(gegenbauer_lambda(sig.p()), f.jmax());
    const auto xq = detail::mult_by_cos_matrix(gegenbauer_lambda(sig.q()), f.kmax());
    return {sig, xp * f.coeffs() * xq.transpose()};
}

/// Bochner Laplacian of the Riemannian product: diagonal on K-types.
inline ZonalFunction apply_N(const ZonalFunction& f)
{
    Eigen::MatrixXd c = f.coeffs();
    for (int j = 0; j <= f.jmax(); ++j)
        for (int k = 0; k <= f.kmax(); ++k) c(j, k) *= static_cast<double>(bochner_eigenvalue(f.sig(), {j, k}));
    return {f.sig(), std::move(c)};
}

/// grad_T f from the commutator identity [N, varpi] = 2(grad_T + (n/2) varpi).
inline ZonalFunction apply_T_via_lemma(const ZonalFunction& f)
{
    const auto wf = multiply_by_varpi(f);
    return 0.5 * (apply_N(wf) - multiply_by_varpi(apply_N(f))) - (0.5 * f.sig().n()) * wf;
}

/// Samples on a tensor grid: rows follow grid.tau nodes, columns grid.rho.
using GridSamples = Eigen::MatrixXd;

namespace detail {

inline Eigen::MatrixXd basis_on_nodes(double lambda, int degree, const std::vector<double>& nodes)
{
    Eigen::MatrixXd b(nodes.size(), degree + 1);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const auto g = gegenbauer_values(lambda, degree, nodes[i]);
        for (int j = 0; j <= degree; ++j) b(static_cast<Eigen::Index>(i), j) = g[j];
    }
    return b;
}

inline Eigen::MatrixXd derivative_on_nodes(double lambda, int degree, const std::vector<double>& nodes)
{
    Eigen::MatrixXd b(nodes.size(), degree + 1);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const auto g = gegenbauer_derivatives(lambda, degree, nodes[i]);
        for (int j = 0; j <= degree; ++j) b(static_cast<Eigen::Index>(i), j) = g[j];
    }
    return b;
}

}  // namespace detail

/// f at one point (x, y) = (cos tau, cos rho).
inline double evaluate_at(const ZonalFunction& f, double x, double y)
{
    const auto gx = gegenbauer_values(gegenbauer_lambda(f.sig().p()), f.jmax(), x);
    const auto gy = gegenbauer_values(gegenbauer_lambda(f.sig().q()), f.kmax(), y);
    double acc = 0.0;
    for (int j = 0; j <= f.jmax(); ++j)
        for (int k = 0; k <= f.kmax(); ++k) acc += f.coeffs()(j, k) * gx[j] * gy[k];
    return acc;
}

inline GridSamples evaluate(const ZonalFunction& f, const QuadratureGrid& grid)
{
    const auto& sig = f.sig();
    const auto bx = detail::basis_on_nodes(gegenbauer_lambda(sig.p()), f.jmax(), grid.tau.nodes);
    const auto by = detail::basis_on_nodes(gegenbauer_lambda(sig.q()), f.kmax(), grid.rho.nodes);
    return bx * f.coeffs() * by.transpose();
}

/// Gauss quadrature projection onto phi_jk, j <= jmax, k <= kmax.
inline ZonalFunction project(const GridSamples& samples, const QuadratureGrid& grid, int jmax, int kmax)
{
    if (!grid.resolves(jmax, kmax))
        throw GridTooCoarse("grid with " + std::to_string(grid.tau.size()) + "x" + std::to_string(grid.rho.size()) +
                            " nodes cannot project degree (" + std::to_string(jmax) + "," + std::to_string(kmax) + ")");
    if (samples.rows() != grid.tau.size() || samples.cols() != grid.rho.size())
        throw InvalidArgument("sample array does not match grid");
    const auto& sig = grid.sig;
    const double lp = gegenbauer_lambda(sig.p()), lq = gegenbauer_lambda(sig.q());
    Eigen::MatrixXd bx = detail::basis_on_nodes(lp, jmax, grid.tau.nodes);
    Eigen::MatrixXd by = detail::basis_on_nodes(lq, kmax, grid.rho.nodes);
    for (int i = 0; i < grid.tau.size(); ++i) bx.row(i) *= grid.tau.weights[i];
    for (int i = 0; i < grid.rho.size(); ++i) by.row(i) *= grid.rho.weights[i];
    for (int j = 0; j <= jmax; ++j) bx.col(j) /= gegenbauer_norm(lp, j);
    for (int k = 0; k <= kmax; ++k) by.col(k) /= gegenbauer_norm(lq, k);
    return {sig, bx.transpose() * samples * by};
}

/// T f = cos(rho) sin(tau) d_tau f + cos(tau) sin(rho) d_rho f, sampled on
/// the grid from exact Gegenbauer derivatives. With x = cos(tau),
/// sin(tau) d_tau = -(1 - x^2) d_x.
inline GridSamples apply_T_numeric(const ZonalFunction& f, const QuadratureGrid& grid)
{
    const auto& sig = f.sig();
    const double lp = gegenbauer_lambda(sig.p()), lq = gegenbauer_lambda(sig.q());
    const auto& xs = grid.tau.nodes;
    const auto& ys = grid.rho.nodes;
    const Eigen::MatrixXd fx =
        detail::derivative_on_nodes(lp, f.jmax(), xs) * f.coeffs() * detail::basis_on_nodes(lq, f.kmax(), ys).transpose();
    const Eigen::MatrixXd fy =
        detail::basis_on_nodes(lp, f.jmax(), xs) * f.coeffs() * detail::derivative_on_nodes(lq, f.kmax(), ys).transpose();
    GridSamples out(xs.size(), ys.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t l = 0; l < ys.size(); ++l) {
            const double x = xs[i], y = ys[l];
            const auto ii = static_cast<Eigen::Index>(i), ll = static_cast<Eigen::Index>(l);
            out(ii, ll) = -y * (1.0 - x * x) * fx(ii, ll) - x * (1.0 - y * y) * fy(ii, ll);
        }
    return out;
}

}  // namespace intertwine
