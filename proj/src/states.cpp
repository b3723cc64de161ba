#include "nlcs/states.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "nlcs/algebra.hpp"
#include "nlcs/fock.hpp"
#include "nlcs/specfun.hpp"

namespace nlcs {

namespace {

using cd = std::complex<double>;

constexpr double max_state_alpha = 20.0;

void require_alpha(double magnitude, const char* what)
{
    if (!std::isfinite(magnitude) || magnitude > max_state_alpha)
        throw RangeError(std::string(what) + ": |alpha| must be finite and <= 20");
}

Index resolve_guard(std::optional<Index> guard, Index fallback, const char* what)
{
    const Index g = guard.value_or(fallback);
    if (g < 0)
        throw RangeError(std::string(what) + ": guard must be non-negative");
    return g;
}

// Smallest extra dimension (>= 16) past n where |alpha|^M / M! < 1e-18.
Index factorial_tail_guard(double alpha, Index n)
{
    const double la = std::log(std::abs(alpha));
    Index g = 16;
    while (double(n + g) * la - std::lgamma(double(n + g) + 1) > std::log(1e-18))
        ++g;
    return g;
}

// f(j) for j = 0..n-1 (f(n-1) is multiplied by zero downstream).
std::vector<double> deformation_weights(double alpha, Index n, double root_tolerance)
{
    std::vector<double> f(n, 1.0);
    if (alpha == 0.0)
        return f;
    const double x = 2 * alpha;
    const std::vector<double> j = bessel_j_sequence(static_cast<int>(n + 1), x);
    double largest = 0.0;
    for (double v : j)
        largest = std::max(largest, std::abs(v));
    for (Index level = 0; level < n; ++level) {
        const int order = static_cast<int>(level + 2);
        if (level + 1 < n && order < std::abs(x) && std::abs(j[order]) <= root_tolerance * largest)
            throw SingularityError("deformed_annihilation: 2 alpha = " + std::to_string(x) +
                                   " is too close to a zero of J_" + std::to_string(order) + " (level n = " +
                                   std::to_string(level) + ")");
        if (j[order] == 0.0) {
            if (level + 1 < n)
                throw NumericError("deformed_annihilation: J_" + std::to_string(order) + " underflows");
            f[level] = 0.0;
            continue;
        }
        f[level] = alpha * j[order - 1] / ((level + 2.0) * j[order]);
    }
    return f;
}

} // namespace

void validate(const StateSpec& spec)
{
    require_dim(spec.dim, "state");
    switch (spec.family) {
    case StateFamily::Phase:
        if (spec.param.imag() != 0.0 || !std::isfinite(spec.param.real()))
            throw RangeError("phase state: phi must be a finite real number");
        break;
    case StateFamily::London:
        if (spec.param.imag() != 0.0)
            throw RangeError("London state: alpha must be real");
        require_alpha(std::abs(spec.param), "London state");
        break;
    case StateFamily::BarutGirardello:
        require_alpha(std::abs(spec.param), "Barut-Girardello state");
        break;
    case StateFamily::Su11Perelomov:
        if (!(spec.bargmann_k > 0.0) || !std::isfinite(spec.bargmann_k))
            throw RangeError("SU(1,1) Perelomov state: Bargmann index must be positive");
        require_alpha(std::abs(spec.param), "SU(1,1) Perelomov state");
        break;
    }
}

FockVector<double> make_state(const StateSpec& spec)
{
    validate(spec);
    switch (spec.family) {
    case StateFamily::Phase:
        return phase_state(spec.param.real(), spec.dim);
    case StateFamily::BarutGirardello:
        return bg_state(spec.param, spec.dim);
    case StateFamily::London:
        return london_state(spec.param.real(), spec.dim);
    case StateFamily::Su11Perelomov:
        return su11_perelomov_state(spec.param, spec.bargmann_k, spec.dim);
    }
    throw RangeError("make_state: unknown family");
}

FockVector<double> phase_state(double phi, Index n)
{
    require_dim(n, "phase_state");
    const double scale = 1.0 / std::sqrt(2 * std::numbers::pi);
    FockVector<double> v(n);
    for (Index j = 0; j < n; ++j)
        v(j) = std::polar(scale, phi * (double(j) + 0.5));
    return v;
}

FockVector<double> phase_state_perelomov(double phi, Index n, std::optional<Index> guard)
{
    require_dim(n, "phase_state_perelomov");
    const Index m = n + resolve_guard(guard, n, "phase_state_perelomov");
    const auto g = su11_generators<double>(m);
    const cd i(0, 1);
    FockVector<double> v = basis_state(m, 0);
    v = act(expm(g.kminus, -std::exp(-i * phi)), v);
    v = act(expm(g.k0, i * phi), v);
    v = act(expm(g.kplus, std::exp(i * phi)), v);
    return v.head(n) / std::sqrt(2 * std::numbers::pi);
}

FockVector<double> bg_state(cd alpha, Index n)
{
    require_dim(n, "bg_state");
    require_alpha(std::abs(alpha), "bg_state");
    FockVector<double> v(n);
    v(0) = 1.0 / std::sqrt(bessel_i(0, 2 * std::abs(alpha)));
    for (Index j = 1; j < n; ++j)
        v(j) = v(j - 1) * alpha / double(j);
    return v;
}

FockVector<double> bg_state_ordered(cd alpha, Index n, std::optional<Index> guard)
{
    require_dim(n, "bg_state_ordered");
    require_alpha(std::abs(alpha), "bg_state_ordered");
    const Index fallback = static_cast<Index>(std::ceil(2 * std::numbers::e * std::abs(alpha))) + 32;
    const Index m = n + resolve_guard(guard, fallback, "bg_state_ordered");
    const auto p = phase_operators<double>(m);
    FockVector<double> v = basis_state(m, 0);
    v = act(expm(p.v, -std::conj(alpha)), v);
    v = act(expm(p.vdag, alpha), v);
    return v.head(n) / std::sqrt(bessel_i(0, 2 * std::abs(alpha)));
}

FockVector<double> london_state(double alpha, Index n)
{
    require_dim(n, "london_state");
    require_alpha(std::abs(alpha), "london_state");
    if (alpha == 0.0)
        return basis_state(n, 0);
    const std::vector<double> j = bessel_j_sequence(static_cast<int>(n), 2 * alpha);
    FockVector<double> v(n);
    for (Index level = 0; level < n; ++level)
        v(level) = (level + 1.0) * j[level + 1] / alpha;
    return v;
}

FockVector<double> london_state_ordered(double alpha, Index n, std::optional<Index> guard)
{
    require_dim(n, "london_state_ordered");
    require_alpha(std::abs(alpha), "london_state_ordered");
    if (alpha == 0.0)
        return basis_state(n, 0);
    const Index m = n + resolve_guard(guard, factorial_tail_guard(alpha, n), "london_state_ordered");
    const auto p = phase_operators<double>(m);
    const FockVector<double> v = act(expm(p.vdag - p.v, cd(alpha)), basis_state(m, 0));
    return v.head(n);
}

TruncatedOperator<double> deformed_annihilation(double alpha, Index n, double root_tolerance)
{
    require_dim(n, "deformed_annihilation");
    require_alpha(std::abs(alpha), "deformed_annihilation");
    const std::vector<double> f = deformation_weights(alpha, n, root_tolerance);
    const auto weight = diagonal<double>(n, [&](Index j) { return f[j]; });
    const auto root = diagonal<double>(n, [](Index j) { return std::sqrt(j + 1.0); });
    return weight * root * annihilation(n);
}

TruncatedOperator<double> deformed_annihilation_su11(double alpha, Index n, double root_tolerance)
{
    require_dim(n, "deformed_annihilation_su11");
    require_alpha(std::abs(alpha), "deformed_annihilation_su11");
    // Same root guard; the weights themselves are rebuilt from K0's spectrum.
    const std::vector<double> fallback = deformation_weights(alpha, n, root_tolerance);
    const auto g = su11_generators<double>(n);
    if (alpha == 0.0)
        return g.kminus;
    const std::vector<double> j = bessel_j_sequence(static_cast<int>(n + 1), 2 * alpha);
    const auto weight = diagonal<double>(n, [&](Index level) {
        const double k0 = g.k0.entries(level, level).real();
        const auto lower = static_cast<std::size_t>(std::lround(k0 + 0.5));
        const auto upper = static_cast<std::size_t>(std::lround(k0 + 1.5));
        if (j[upper] == 0.0)
            return fallback[level];
        return alpha * j[lower] / ((k0 + 1.5) * j[upper]);
    });
    return weight * g.kminus;
}

FockVector<double> su11_perelomov_state(cd alpha, double k, Index n)
{
    require_dim(n, "su11_perelomov_state");
    if (!(k > 0.0) || !std::isfinite(k))
        throw RangeError("su11_perelomov_state: Bargmann index must be positive");
    const double r = std::abs(alpha);
    require_alpha(r, "su11_perelomov_state");
    if (r == 0.0)
        return basis_state(n, 0);
    const double theta = std::arg(alpha);
    // (1 - tanh^2 r)^k = cosh(r)^(-2k), taken in logs to stay finite at large r.
    const double log_prefactor = -2.0 * k * std::log(std::cosh(r));
    const double log_mu = std::log(std::tanh(r));
    const double log_gamma_2k = std::lgamma(2 * k);
    FockVector<double> v(n);
    for (Index m = 0; m < n; ++m) {
        const double md = double(m);
        const double log_ratio = std::lgamma(2 * k + md) - std::lgamma(md + 1) - log_gamma_2k;
        v(m) = std::polar(std::exp(log_prefactor + 0.5 * log_ratio + md * log_mu), md * theta);
    }
    return v;
}

double eigen_residual(const TruncatedOperator<double>& op, const FockVector<double>& v, cd lambda, Index exclude_top)
{
    require_same_dim(op.dim(), v.size(), "eigen_residual");
    if (exclude_top < 0 || exclude_top >= v.size())
        throw RangeError("eigen_residual: exclude_top must lie in [0, N)");
    const double norm = v.norm();
    if (norm == 0.0)
        throw NumericError("eigen_residual: zero vector");
    const FockVector<double> r = op.entries * v - lambda * v;
    return r.head(v.size() - exclude_top).norm() / norm;
}

} // namespace nlcs
