#include "nlcs/specfun.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "nlcs/core.hpp"

namespace nlcs {

namespace {

constexpr double rescale_above = 1e250;
constexpr double rescale_factor = 1e-250;
constexpr double tail_target = 1e-20;
constexpr double ascending_series_limit = 15.0;
constexpr int extended_order_limit = 4096;

void check_argument(double x, double lo, const char* what)
{
    if (!std::isfinite(x) || x < lo || x > bessel_max_argument)
        throw RangeError(std::string(what) + ": argument " + std::to_string(x) + " outside supported range");
}

void check_order(int m, int limit, const char* what)
{
    if (m < 0 || m > limit)
        throw RangeError(std::string(what) + ": order " + std::to_string(m) + " outside supported range");
}

// Start order for the J recurrence. At least m + max(20, ceil(1.5 x)); raised
// until the bound |J_s(x)| <= (x/2)^s / s! falls below tail_target so that the
// normalization sum misses nothing visible at double precision.
int miller_start_j(int m, double x)
{
    int start = m + std::max(20, static_cast<int>(std::ceil(1.5 * x)));
    const double log_half = std::log(x / 2);
    const double log_target = std::log(tail_target);
    while (start * log_half - std::lgamma(start + 1.0) > log_target)
        ++start;
    return start + (start % 2);
}

// Start order for the I recurrence, from the ratio bound
// I_{v+1}(x) / I_v(x) < x / (v + sqrt(v^2 + x^2)) and I_0(x) <= e^x.
int miller_start_i(int m, double x)
{
    int start = m + std::max(20, static_cast<int>(std::ceil(1.5 * x)));
    double log_ratio = 0.0;
    for (int v = 0; v < start; ++v)
        log_ratio += std::log(x / (v + std::hypot(double(v), x)));
    const double log_target = std::log(tail_target);
    while (log_ratio > log_target) {
        log_ratio += std::log(x / (start + std::hypot(double(start), x)));
        ++start;
    }
    return start;
}

// J_0..J_{m_max}(x) for x > 0.
std::vector<double> miller_j(int m_max, double x)
{
    const int start = miller_start_j(m_max, x);
    std::vector<double> out(m_max + 1, 0.0);
    double above = 0.0;
    double current = 1.0;
    double norm = 0.0;
    for (int k = start; k >= 0; --k) {
        if (k <= m_max)
            out[k] = current;
        if (k % 2 == 0)
            norm += (k == 0 ? 1.0 : 2.0) * current;
        if (k == 0)
            break;
        const double below = (2.0 * k / x) * current - above;
        above = current;
        current = below;
        if (std::abs(current) > rescale_above) {
            current *= rescale_factor;
            above *= rescale_factor;
            norm *= rescale_factor;
            for (int j = k; j <= m_max; ++j)
                out[j] *= rescale_factor;
        }
    }
    for (double& v : out)
        v /= norm;
    return out;
}

double ascending_i(int m, double x)
{
    const double half = x / 2;
    double term = 1.0;
    for (int j = 1; j <= m; ++j)
        term *= half / j;
    const double q = half * half;
    double sum = 0.0;
    for (int k = 0; k < 1000; ++k) {
        sum += term;
        term *= q / ((k + 1.0) * (k + 1.0 + m));
        if (term <= sum * 1e-18)
            break;
    }
    return sum;
}

double miller_i(int m, double x)
{
    const int start = miller_start_i(m, x);
    double above = 0.0;
    double current = 1.0;
    double norm = 0.0;
    double wanted = 0.0;
    for (int k = start; k >= 0; --k) {
        if (k == m)
            wanted = current;
        norm += (k == 0 ? 1.0 : 2.0) * current;
        if (k == 0)
            break;
        const double below = (2.0 * k / x) * current + above;
        above = current;
        current = below;
        if (current > rescale_above) {
            current *= rescale_factor;
            above *= rescale_factor;
            norm *= rescale_factor;
            wanted *= rescale_factor;
        }
    }
    return wanted / norm * std::exp(x);
}

} // namespace

std::vector<double> bessel_j_sequence(int m_max, double x)
{
    check_order(m_max, extended_order_limit, "bessel_j_sequence");
    if (!std::isfinite(x) || std::abs(x) > bessel_max_argument)
        throw RangeError("bessel_j_sequence: argument " + std::to_string(x) + " outside supported range");
    if (x == 0.0) {
        std::vector<double> out(m_max + 1, 0.0);
        out[0] = 1.0;
        return out;
    }
    std::vector<double> out = miller_j(m_max, std::abs(x));
    if (x < 0)
        for (int k = 1; k <= m_max; k += 2)
            out[k] = -out[k];
    return out;
}

double bessel_j(int m, double x)
{
    check_order(m, bessel_max_order, "bessel_j");
    if (!std::isfinite(x) || std::abs(x) > bessel_max_argument)
        throw RangeError("bessel_j: argument " + std::to_string(x) + " outside supported range");
    if (x == 0.0)
        return m == 0 ? 1.0 : 0.0;
    const double value = miller_j(m, std::abs(x))[m];
    return (x < 0 && m % 2 == 1) ? -value : value;
}

double bessel_i(int m, double x)
{
    check_order(m, bessel_max_order, "bessel_i");
    check_argument(x, 0.0, "bessel_i");
    if (x == 0.0)
        return m == 0 ? 1.0 : 0.0;
    if (x <= ascending_series_limit)
        return ascending_i(m, x);
    return miller_i(m, x);
}

BesselEvaluation evaluate_bessel_j(int m, double x)
{
    const double value = bessel_j(m, x);
    const double ops = x == 0.0 ? 0.0 : miller_start_j(m, std::abs(x));
    return {m, x, value, (ops + 1) * std::numeric_limits<double>::epsilon()};
}

BesselEvaluation evaluate_bessel_i(int m, double x)
{
    const double value = bessel_i(m, x);
    const double ops = x == 0.0 ? 0.0 : (x <= ascending_series_limit ? m + 40.0 : miller_start_i(m, x));
    return {m, x, value, (ops + 1) * std::numeric_limits<double>::epsilon()};
}

} // namespace nlcs
