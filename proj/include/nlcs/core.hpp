#ifndef NLCS_CORE_HPP
#define NLCS_CORE_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace nlcs {

using Index = Eigen::Index;

template <typename Real>
using Complex = std::complex<Real>;

/// Column of amplitudes c_j = <j|psi> over the truncated Fock basis.
template <typename Real>
using FockVector = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, 1>;

template <typename Real>
using DenseMatrix = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

/// Dense operator on the first N Fock levels.
///
/// Rows and columns with index >= dim() - edge_band may carry artifacts of the
/// hard cutoff (for instance [a, a^dagger] is not the identity in the last
/// row). Comparisons against infinite-space identities should drop that band.
template <typename Real>
struct TruncatedOperator {
    DenseMatrix<Real> entries;
    Index edge_band = 0;

    Index dim() const { return entries.rows(); }

    /// Number of leading levels free of truncation artifacts.
    Index clean_dim() const { return dim() - edge_band; }
};

// Error hierarchy. Each kind maps to one CLI exit code.

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Mismatched or too-small dimensions.
struct DimensionError : Error {
    using Error::Error;
};

/// Argument outside the supported range, or a violated precondition.
struct RangeError : Error {
    using Error::Error;
};

/// Parameters sit on a singularity (Bessel root, vanishing BCH denominator, ln 0).
struct SingularityError : Error {
    using Error::Error;
};

/// Amplitude reached the top truncated level during propagation.
struct TruncationError : Error {
    using Error::Error;
};

/// Non-finite values or a failed numerical kernel.
struct NumericError : Error {
    using Error::Error;
};

/// A closed form was requested where none exists (e.g. impulse from guide n != 0).
struct UnsupportedOracleError : Error {
    using Error::Error;
};

inline void require_dim(Index n, const char* what)
{
    if (n < 2)
        throw DimensionError(std::string(what) + ": dimension must be >= 2, got " + std::to_string(n));
}

inline void require_same_dim(Index a, Index b, const char* what)
{
    if (a != b)
        throw DimensionError(std::string(what) + ": dimension mismatch (" + std::to_string(a) + " vs " +
                             std::to_string(b) + ")");
}

/// Unit vector |n> in dimension dim.
template <typename Real = double>
FockVector<Real> basis_state(Index dim, Index n)
{
    require_dim(dim, "basis_state");
    if (n < 0 || n >= dim)
        throw RangeError("basis_state: level " + std::to_string(n) + " outside [0, " + std::to_string(dim) + ")");
    FockVector<Real> v = FockVector<Real>::Zero(dim);
    v(n) = Complex<Real>(1);
    return v;
}

} // namespace nlcs

#endif
