#ifndef NLCS_ALGEBRA_HPP
#define NLCS_ALGEBRA_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "nlcs/fock.hpp"

namespace nlcs {

/// su(1,1) generators in the k = 1/2 (single-mode) realization:
/// K0 = n + 1/2, K+ = a^dagger sqrt(n + 1), K- = sqrt(n + 1) a.
template <typename Real = double>
struct Su11Generators {
    TruncatedOperator<Real> k0;
    TruncatedOperator<Real> kplus;
    TruncatedOperator<Real> kminus;
    Real bargmann_k = Real(1) / 2;
};

template <typename Real = double>
Su11Generators<Real> su11_generators(Index n)
{
    require_dim(n, "su11_generators");
    Su11Generators<Real> g;
    g.k0 = diagonal<Real>(n, [](Index j) { return Real(j) + Real(1) / 2; });
    g.kplus = {DenseMatrix<Real>::Zero(n, n), 1};
    g.kminus = {DenseMatrix<Real>::Zero(n, n), 0};
    for (Index j = 0; j + 1 < n; ++j) {
        g.kplus.entries(j + 1, j) = Complex<Real>(Real(j + 1));
        g.kminus.entries(j, j + 1) = Complex<Real>(Real(j + 1));
    }
    return g;
}

/// Exponential phase operators V = (n + 1)^{-1/2} a and its adjoint.
/// Only right-unitary: V V^dagger = 1 but V^dagger V = 1 - |0><0|.
template <typename Real = double>
struct PhaseOperators {
    TruncatedOperator<Real> v;
    TruncatedOperator<Real> vdag;
};

template <typename Real = double>
PhaseOperators<Real> phase_operators(Index n)
{
    require_dim(n, "phase_operators");
    PhaseOperators<Real> p{{DenseMatrix<Real>::Zero(n, n), 0}, {}};
    for (Index j = 0; j + 1 < n; ++j)
        p.v.entries(j, j + 1) = Complex<Real>(1);
    p.vdag = {p.v.entries.adjoint(), 1};
    return p;
}

/// (n + 1)^{-1/2} as an exact diagonal.
template <typename Real = double>
TruncatedOperator<Real> inverse_sqrt_number_plus_one(Index n)
{
    using std::sqrt;
    return diagonal<Real>(n, [](Index j) { return Real(1) / sqrt(Real(j + 1)); });
}

// ---------------------------------------------------------------------------
// Disentangling of ordered exponential products.
//
//   NormalFirst:     exp(X+ K+) exp(ln X0 K0) exp(X- K-)
//   AntinormalFirst: exp(X- K-) exp(ln X0 K0) exp(X+ K+)
//
// ln uses the principal branch.

enum class BchOrdering { NormalFirst, AntinormalFirst };

template <typename Real = double>
struct BCHParams {
    Complex<Real> plus;
    Complex<Real> zero;
    Complex<Real> minus;
    BchOrdering ordering = BchOrdering::NormalFirst;
};

namespace detail {

template <typename Real>
void require_nonzero_zero(const BCHParams<Real>& p, const char* what)
{
    if (p.zero == Complex<Real>(0))
        throw SingularityError(std::string(what) + ": X0 = 0 has no logarithm");
}

template <typename Real>
void require_nonsingular(const Complex<Real>& denom, const char* what)
{
    using std::abs;
    if (abs(denom) <= 4 * std::numeric_limits<Real>::epsilon())
        throw SingularityError(std::string(what) + ": vanishing denominator in parameter map");
}

} // namespace detail

/// B-side (K- leftmost) parameters to the equivalent A-side parameters.
template <typename Real>
BCHParams<Real> bch_antinormal_to_normal(const BCHParams<Real>& b)
{
    if (b.ordering != BchOrdering::AntinormalFirst)
        throw RangeError("bch_antinormal_to_normal: expected AntinormalFirst parameters");
    detail::require_nonzero_zero(b, "bch_antinormal_to_normal");
    const Complex<Real> denom = Complex<Real>(1) - b.plus * b.zero * b.minus;
    detail::require_nonsingular(denom, "bch_antinormal_to_normal");
    return {b.plus * b.zero / denom, b.zero / (denom * denom), b.minus * b.zero / denom, BchOrdering::NormalFirst};
}

/// A-side (K+ leftmost) parameters to the equivalent B-side parameters.
template <typename Real>
BCHParams<Real> bch_normal_to_antinormal(const BCHParams<Real>& a)
{
    if (a.ordering != BchOrdering::NormalFirst)
        throw RangeError("bch_normal_to_antinormal: expected NormalFirst parameters");
    detail::require_nonzero_zero(a, "bch_normal_to_antinormal");
    // Exact inverse of bch_antinormal_to_normal: 1 - B+ B0 B- = (A0 - A+ A-) / A0.
    const Complex<Real> shifted = a.zero - a.plus * a.minus;
    detail::require_nonsingular(shifted, "bch_normal_to_antinormal");
    return {a.plus / shifted, shifted * shifted / a.zero, a.minus / shifted, BchOrdering::AntinormalFirst};
}

/// Opposite-ordering parameters, whichever side p is on.
template <typename Real>
BCHParams<Real> bch_convert(const BCHParams<Real>& p)
{
    return p.ordering == BchOrdering::NormalFirst ? bch_normal_to_antinormal(p) : bch_antinormal_to_normal(p);
}

/// Leading block x block corner of the ordered product in dimension n, each
/// factor built with expm. The full matrix when block is omitted.
template <typename Real>
DenseMatrix<Real> ordered_product(const BCHParams<Real>& p, Index n, std::optional<Index> block = std::nullopt)
{
    const Index rows = std::min(block.value_or(n), n);
    detail::require_nonzero_zero(p, "ordered_product");
    using std::log;
    const auto g = su11_generators<Real>(n);
    const auto ep = expm(g.kplus, p.plus).entries;
    const auto e0 = expm(g.k0, log(p.zero)).entries;
    const auto em = expm(g.kminus, p.minus).entries;
    const auto& left = p.ordering == BchOrdering::NormalFirst ? ep : em;
    const auto& right = p.ordering == BchOrdering::NormalFirst ? em : ep;
    return left.topRows(rows) * e0.diagonal().asDiagonal() * right.leftCols(rows);
}

inline Index default_edge_exclusion(Index n) { return (n + 3) / 4; }

/// Extra levels needed before the antinormal product's leading block
/// (indices < block) stops changing.
///
/// Entry (i, j) of exp(B- K-) exp(ln B0 K0) exp(B+ K+) is a sum over
/// intermediate levels k >= max(i, j) with terms bounded by
/// |B-|^(k-i) |B+|^(k-j) |B0|^(k+1/2) C(k, i) C(k, j). The returned guard
/// puts the cutoff where those terms for i = j = block - 1 have dropped below
/// 1e-20 and shrink at least twofold per level.
template <typename Real>
Index antinormal_guard(const BCHParams<Real>& b, Index block, Index max_guard)
{
    using std::abs;
    const double bp = static_cast<double>(abs(b.plus));
    const double bm = static_cast<double>(abs(b.minus));
    const double b0 = static_cast<double>(abs(b.zero));
    if (bp == 0.0 || bm == 0.0)
        return 0;
    const double log_rate = std::log(bp) + std::log(bm);
    const Index top = std::max<Index>(block - 1, 0);
    const auto log_term = [&](Index k) {
        const double lc = std::lgamma(double(k + 1)) - std::lgamma(double(top + 1)) - std::lgamma(double(k - top + 1));
        return double(k - top) * log_rate + (double(k) + 0.5) * std::log(b0) + 2 * lc;
    };
    const double floor = std::log(1e-20);
    for (Index k = top + 1; k - block <= max_guard; ++k) {
        const double t = log_term(k);
        if (t < floor && log_term(k + 1) - t < -std::log(2.0))
            return std::max<Index>(0, k + 1 - block);
    }
    throw RangeError("verify_bch: antinormal product does not converge within " + std::to_string(max_guard) +
                     " guard levels (|X+ X0 X-| too large)");
}

/// Checks exp(A+K+) exp(lnA0 K0) exp(A-K-) == exp(B-K-) exp(lnB0 K0) exp(B+K+)
/// for params and their converted counterpart.
///
/// The normal-ordered product is lower-triangular times upper-triangular, so
/// its leading block is exact in dimension n. The antinormal-ordered product
/// sums over all levels above the block and is therefore formed in dimension
/// n + guard. Returns the largest absolute entry deviation over the leading
/// (n - edge_exclusion) block. Entries grow like binomial coefficients, so
/// tight absolute tolerances need an extended-precision Real.
template <typename Real>
Real verify_bch(const BCHParams<Real>& params, Index n, std::optional<Index> edge_exclusion = std::nullopt,
                std::optional<Index> guard = std::nullopt)
{
    require_dim(n, "verify_bch");
    const Index edge = edge_exclusion.value_or(default_edge_exclusion(n));
    if (edge < 0 || edge >= n)
        throw RangeError("verify_bch: edge exclusion must lie in [0, n)");
    const BCHParams<Real> other = bch_convert(params);
    const BCHParams<Real>& normal = params.ordering == BchOrdering::NormalFirst ? params : other;
    const BCHParams<Real>& antinormal = params.ordering == BchOrdering::NormalFirst ? other : params;
    const Index block = n - edge;
    const Index extra = guard.value_or(antinormal_guard(antinormal, block, 8 * n));

    const DenseMatrix<Real> lhs = ordered_product(normal, n, block);
    const DenseMatrix<Real> rhs = ordered_product(antinormal, n + extra, block);
    return (lhs - rhs).cwiseAbs().maxCoeff();
}

/// Deviation between exp(-i pi n/2) exp(i alpha (V^dagger + V)) exp(i pi n/2)
/// and exp(alpha (V^dagger - V)) on the leading (n - edge_exclusion) block.
template <typename Real>
Real rotation_conjugation_check(Real alpha, Index n, std::optional<Index> edge_exclusion = std::nullopt)
{
    require_dim(n, "rotation_conjugation_check");
    using std::abs;
    if (abs(alpha) > Real(n) / 8)
        throw RangeError("rotation_conjugation_check: |alpha| must not exceed n/8");
    const Index edge = edge_exclusion.value_or(default_edge_exclusion(n));
    if (edge < 0 || edge >= n)
        throw RangeError("rotation_conjugation_check: edge exclusion must lie in [0, n)");

    const auto p = phase_operators<Real>(n);
    const auto num = number<Real>(n);
    using std::acos;
    const Real quarter_turn = acos(Real(-1)) / 2;
    const Complex<Real> i(0, 1);
    const auto rotate = expm(num, i * quarter_turn);
    const auto unrotate = expm(num, -i * quarter_turn);
    const auto hop = expm(p.vdag + p.v, i * alpha);
    const auto shift = expm(p.vdag - p.v, Complex<Real>(alpha));
    const DenseMatrix<Real> lhs = unrotate.entries * hop.entries * rotate.entries;
    return max_abs_deviation<Real>(lhs, shift.entries, n - edge);
}

} // namespace nlcs

#endif
