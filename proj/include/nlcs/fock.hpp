#ifndef NLCS_FOCK_HPP
#define NLCS_FOCK_HPP

#include <algorithm>
#include <cmath>

#include "nlcs/core.hpp"
#include "nlcs/expm.hpp"

namespace nlcs {

// Ladder operators with a hard cutoff at N levels: a^dagger |N-1> = 0.

template <typename Real = double>
TruncatedOperator<Real> annihilation(Index n)
{
    require_dim(n, "annihilation");
    TruncatedOperator<Real> op{DenseMatrix<Real>::Zero(n, n), 0};
    using std::sqrt;
    for (Index j = 1; j < n; ++j)
        op.entries(j - 1, j) = Complex<Real>(sqrt(Real(j)));
    return op;
}

template <typename Real = double>
TruncatedOperator<Real> creation(Index n)
{
    require_dim(n, "creation");
    TruncatedOperator<Real> op{annihilation<Real>(n).entries.adjoint(), 1};
    return op;
}

template <typename Real = double>
TruncatedOperator<Real> number(Index n)
{
    require_dim(n, "number");
    TruncatedOperator<Real> op{DenseMatrix<Real>::Zero(n, n), 0};
    for (Index j = 0; j < n; ++j)
        op.entries(j, j) = Complex<Real>(Real(j));
    return op;
}

template <typename Real = double>
TruncatedOperator<Real> identity(Index n)
{
    require_dim(n, "identity");
    return {DenseMatrix<Real>::Identity(n, n), 0};
}

/// Diagonal operator with entries f(0), ..., f(N-1).
template <typename Real = double, typename Fn>
TruncatedOperator<Real> diagonal(Index n, Fn&& f)
{
    require_dim(n, "diagonal");
    TruncatedOperator<Real> op{DenseMatrix<Real>::Zero(n, n), 0};
    for (Index j = 0; j < n; ++j)
        op.entries(j, j) = Complex<Real>(f(j));
    return op;
}

template <typename Real>
FockVector<Real> act(const TruncatedOperator<Real>& op, const FockVector<Real>& v)
{
    require_same_dim(op.dim(), v.size(), "apply");
    return op.entries * v;
}

template <typename Real>
TruncatedOperator<Real> adjoint(const TruncatedOperator<Real>& op)
{
    return {op.entries.adjoint(), op.edge_band};
}

template <typename Real>
TruncatedOperator<Real> operator*(const TruncatedOperator<Real>& a, const TruncatedOperator<Real>& b)
{
    require_same_dim(a.dim(), b.dim(), "operator product");
    return {a.entries * b.entries, std::min(a.dim(), a.edge_band + b.edge_band)};
}

template <typename Real>
TruncatedOperator<Real> operator+(const TruncatedOperator<Real>& a, const TruncatedOperator<Real>& b)
{
    require_same_dim(a.dim(), b.dim(), "operator sum");
    return {a.entries + b.entries, std::max(a.edge_band, b.edge_band)};
}

template <typename Real>
TruncatedOperator<Real> operator-(const TruncatedOperator<Real>& a, const TruncatedOperator<Real>& b)
{
    require_same_dim(a.dim(), b.dim(), "operator difference");
    return {a.entries - b.entries, std::max(a.edge_band, b.edge_band)};
}

template <typename Real>
TruncatedOperator<Real> operator*(const Complex<Real>& s, const TruncatedOperator<Real>& a)
{
    return {s * a.entries, a.edge_band};
}

template <typename Real>
TruncatedOperator<Real> commutator(const TruncatedOperator<Real>& a, const TruncatedOperator<Real>& b)
{
    require_same_dim(a.dim(), b.dim(), "commutator");
    return {a.entries * b.entries - b.entries * a.entries,
            std::min(a.dim(), a.edge_band + b.edge_band + 1)};
}

/// exp(scale * op). The edge band is inherited from op.
template <typename Real>
TruncatedOperator<Real> expm(const TruncatedOperator<Real>& op, const Complex<Real>& scale)
{
    return {matrix_exp<Real>(scale * op.entries), op.edge_band};
}

/// Largest |a_ij - b_ij| over the leading block x block corner.
template <typename Real>
Real max_abs_deviation(const DenseMatrix<Real>& a, const DenseMatrix<Real>& b, Index block)
{
    require_same_dim(a.rows(), b.rows(), "max_abs_deviation");
    block = std::min(block, a.rows());
    if (block <= 0)
        return Real(0);
    return (a.topLeftCorner(block, block) - b.topLeftCorner(block, block)).cwiseAbs().maxCoeff();
}

} // namespace nlcs

#endif
