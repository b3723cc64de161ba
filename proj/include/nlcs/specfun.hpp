#ifndef NLCS_SPECFUN_HPP
#define NLCS_SPECFUN_HPP

#include <vector>

namespace nlcs {

/// Supported domain of the public single-order entry points.
inline constexpr int bessel_max_order = 200;
inline constexpr double bessel_max_argument = 50.0;

struct BesselEvaluation {
    int order = 0;
    double argument = 0.0;
    double value = 0.0;
    double est_rel_error = 0.0;
};

/// J_m(x) for 0 <= m <= 200 and |x| <= 50, by Miller's downward recurrence
/// normalized with J_0 + 2 sum_k J_2k = 1. Throws RangeError outside.
double bessel_j(int m, double x);

/// I_m(x) for 0 <= m <= 200 and 0 <= x <= 50. Ascending series up to x = 15,
/// downward recurrence normalized with I_0 + 2 sum_k I_k = e^x above.
double bessel_i(int m, double x);

/// J_0(x) .. J_{m_max}(x) from one recurrence pass. Orders above 200 are
/// allowed here (|x| <= 50 still applies); such values are tiny but keep full
/// relative accuracy until they underflow.
std::vector<double> bessel_j_sequence(int m_max, double x);

/// bessel_j together with an a-priori relative error estimate.
BesselEvaluation evaluate_bessel_j(int m, double x);
BesselEvaluation evaluate_bessel_i(int m, double x);

} // namespace nlcs

#endif
