#ifndef NLCS_VERIFY_HPP
#define NLCS_VERIFY_HPP

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "nlcs/algebra.hpp"

namespace nlcs {

struct CheckResult {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;

    bool passed() const { return residual <= tolerance; }
};

enum class Suite { Specfun, Algebra, States, Lattice, All };

/// Runs the named invariant suite. dim sets the working dimension of the
/// algebra and state checks (lattice checks use their own sizes).
std::vector<CheckResult> run_suite(Suite suite, Index dim);

enum class Precision { Double, Quad };

struct BchCheckReport {
    BCHParams<double> input;
    BCHParams<double> converted;
    CheckResult identity;
    CheckResult round_trip;
};

/// Converts params to the opposite ordering, compares both ordered products
/// with verify_bch in the requested precision and checks the map round trip.
BchCheckReport bch_check(const BCHParams<double>& params, Index dim, std::optional<Index> edge_exclusion,
                         Precision precision, double tolerance);

/// verify_bch evaluated in 113-bit precision for double parameters.
double verify_bch_quad(const BCHParams<double>& params, Index dim, std::optional<Index> edge_exclusion = std::nullopt);

/// Largest componentwise gap of the parameter round trip through both maps.
double bch_round_trip_error(const BCHParams<double>& params);

} // namespace nlcs

#endif
