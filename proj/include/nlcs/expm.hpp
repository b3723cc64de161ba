#ifndef NLCS_EXPM_HPP
#define NLCS_EXPM_HPP

#include <array>
#include <cmath>
#include <limits>

#include "nlcs/core.hpp"

namespace nlcs {

namespace detail {

template <typename Real>
bool all_finite(const DenseMatrix<Real>& a)
{
    using std::isfinite;
    for (Index j = 0; j < a.cols(); ++j)
        for (Index i = 0; i < a.rows(); ++i)
            if (!isfinite(a(i, j).real()) || !isfinite(a(i, j).imag()))
                return false;
    return true;
}

template <typename Real>
bool is_lower_triangular(const DenseMatrix<Real>& a)
{
    for (Index j = 1; j < a.cols(); ++j)
        for (Index i = 0; i < j; ++i)
            if (a(i, j) != Complex<Real>(0))
                return false;
    return true;
}

template <typename Real>
bool is_diagonal(const DenseMatrix<Real>& a)
{
    return is_lower_triangular<Real>(a) && is_lower_triangular<Real>(a.transpose());
}

/// Matrix products that skip the zero upper triangle when both factors are
/// lower triangular.
template <typename Real>
class ProductKernel {
public:
    explicit ProductKernel(bool lower) : lower_(lower) {}

    DenseMatrix<Real> mul(const DenseMatrix<Real>& a, const DenseMatrix<Real>& b) const
    {
        if (!lower_)
            return a * b;
        const Index n = a.rows();
        DenseMatrix<Real> c = DenseMatrix<Real>::Zero(n, n);
        for (Index j = 0; j < n; ++j)
            c.col(j).tail(n - j).noalias() =
                a.bottomRightCorner(n - j, n - j).template triangularView<Eigen::Lower>() * b.col(j).tail(n - j);
        return c;
    }

    /// Solves lhs * x = rhs.
    DenseMatrix<Real> solve(const DenseMatrix<Real>& lhs, const DenseMatrix<Real>& rhs) const
    {
        if (!lower_)
            return lhs.partialPivLu().solve(rhs);
        const Index n = lhs.rows();
        DenseMatrix<Real> x = DenseMatrix<Real>::Zero(n, n);
        for (Index j = 0; j < n; ++j)
            x.col(j).tail(n - j) = lhs.bottomRightCorner(n - j, n - j)
                                       .template triangularView<Eigen::Lower>()
                                       .solve(rhs.col(j).tail(n - j));
        return x;
    }

private:
    bool lower_;
};

// Pade numerator coefficients b_0..b_m for degrees 3, 5, 7, 9, 13.
inline constexpr std::array<long long, 4> pade3_coeffs = {120, 60, 12, 1};
inline constexpr std::array<long long, 6> pade5_coeffs = {30240, 15120, 3360, 420, 30, 1};
inline constexpr std::array<long long, 8> pade7_coeffs = {17297280, 8648640, 1995840, 277200, 25200, 1512, 56, 1};
inline constexpr std::array<long long, 10> pade9_coeffs = {17643225600LL, 8821612800LL, 2075673600, 302702400, 30270240,
                                                    2162160,       110880,        3960,       90,        1};
inline constexpr std::array<long long, 14> pade13_coeffs = {
    64764752532480000LL, 32382376266240000LL, 7771770303897600LL, 1187353796428800LL, 129060195264000LL,
    10559470521600LL,    670442572800LL,      33522128640LL,      1323241920,         40840800,
    960960,              16380,               182,                1};

// Norm bounds for unit roundoff 2^-53 (Higham 2005).
inline constexpr std::array<double, 5> theta_double = {1.495585217958292e-2, 2.539398330063230e-1,
                                                       9.504178996162932e-1, 2.097847961257068e0,
                                                       5.371920351148152e0};

/// Largest ||A|| for which the degree-13 approximant reaches the working
/// precision. Uses the leading error term (13!)^2 / (26! 27!) ||A||^27.
template <typename Real>
double theta13_for_precision()
{
    const double u = static_cast<double>(std::numeric_limits<Real>::epsilon()) / 2;
    if (u >= 0x1p-53)
        return theta_double[4];
    constexpr double lead = 8.829961602018678e-36;
    return std::pow(u / lead, 1.0 / 27.0);
}

template <typename Real, std::size_t M>
void pade_low(const DenseMatrix<Real>& a, const ProductKernel<Real>& k, const std::array<long long, M>& b,
              DenseMatrix<Real>& u, DenseMatrix<Real>& v)
{
    const Index n = a.rows();
    const DenseMatrix<Real> id = DenseMatrix<Real>::Identity(n, n);
    const DenseMatrix<Real> a2 = k.mul(a, a);
    DenseMatrix<Real> pow = id;
    DenseMatrix<Real> odd = Real(b[1]) * id;
    v = Real(b[0]) * id;
    for (std::size_t i = 2; i < M; i += 2) {
        pow = k.mul(pow, a2);
        v += Real(b[i]) * pow;
        if (i + 1 < M)
            odd += Real(b[i + 1]) * pow;
    }
    u = k.mul(a, odd);
}

template <typename Real>
void pade13(const DenseMatrix<Real>& a, const ProductKernel<Real>& k, DenseMatrix<Real>& u, DenseMatrix<Real>& v)
{
    const auto& b = pade13_coeffs;
    const Index n = a.rows();
    const DenseMatrix<Real> id = DenseMatrix<Real>::Identity(n, n);
    const DenseMatrix<Real> a2 = k.mul(a, a);
    const DenseMatrix<Real> a4 = k.mul(a2, a2);
    const DenseMatrix<Real> a6 = k.mul(a4, a2);
    DenseMatrix<Real> tmp = Real(b[13]) * a6 + Real(b[11]) * a4 + Real(b[9]) * a2;
    tmp = k.mul(a6, tmp);
    tmp += Real(b[7]) * a6 + Real(b[5]) * a4 + Real(b[3]) * a2 + Real(b[1]) * id;
    u = k.mul(a, tmp);
    tmp = Real(b[12]) * a6 + Real(b[10]) * a4 + Real(b[8]) * a2;
    v = k.mul(a6, tmp);
    v += Real(b[6]) * a6 + Real(b[4]) * a4 + Real(b[2]) * a2 + Real(b[0]) * id;
}

template <typename Real>
DenseMatrix<Real> exp_lower_or_dense(const DenseMatrix<Real>& a, bool lower)
{
    const Index n = a.rows();
    const ProductKernel<Real> k(lower);
    const double norm = static_cast<double>(a.cwiseAbs().colwise().sum().maxCoeff());

    DenseMatrix<Real> u, v;
    int squarings = 0;
    const bool double_like = theta13_for_precision<Real>() == theta_double[4];
    if (double_like && norm <= theta_double[0]) {
        pade_low<Real>(a, k, pade3_coeffs, u, v);
    } else if (double_like && norm <= theta_double[1]) {
        pade_low<Real>(a, k, pade5_coeffs, u, v);
    } else if (double_like && norm <= theta_double[2]) {
        pade_low<Real>(a, k, pade7_coeffs, u, v);
    } else if (double_like && norm <= theta_double[3]) {
        pade_low<Real>(a, k, pade9_coeffs, u, v);
    } else {
        const double theta = theta13_for_precision<Real>();
        if (norm > theta)
            squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm / theta))));
        const DenseMatrix<Real> scaled = a * Real(std::ldexp(1.0, -squarings));
        pade13<Real>(scaled, k, u, v);
    }

    DenseMatrix<Real> result = k.solve(v - u, v + u);
    for (int i = 0; i < squarings; ++i)
        result = k.mul(result, result);
    if (!all_finite<Real>(result))
        throw NumericError("matrix_exp: result is not finite (n = " + std::to_string(n) + ")");
    return result;
}

} // namespace detail

/// Matrix exponential by scaling and squaring with a diagonal Pade approximant.
///
/// Works on non-normal input. For double the degree is chosen from
/// {3, 5, 7, 9, 13} as in Higham (2005); other scalar types always use degree
/// 13 with the norm bound derived from their epsilon. Diagonal input is
/// exponentiated entrywise and triangular input keeps its triangle.
template <typename Real>
DenseMatrix<Real> matrix_exp(const DenseMatrix<Real>& a)
{
    if (a.rows() != a.cols())
        throw DimensionError("matrix_exp: matrix must be square");
    if (!detail::all_finite<Real>(a))
        throw NumericError("matrix_exp: input has non-finite entries");
    const Index n = a.rows();
    if (n == 0)
        return a;

    if (detail::is_diagonal<Real>(a)) {
        DenseMatrix<Real> d = DenseMatrix<Real>::Zero(n, n);
        using std::exp;
        for (Index i = 0; i < n; ++i)
            d(i, i) = exp(a(i, i));
        return d;
    }
    if (detail::is_lower_triangular<Real>(a))
        return detail::exp_lower_or_dense<Real>(a, true);
    if (detail::is_lower_triangular<Real>(a.transpose()))
        return detail::exp_lower_or_dense<Real>(a.transpose(), true).transpose();
    return detail::exp_lower_or_dense<Real>(a, false);
}

} // namespace nlcs

#endif
