#include "nlcs/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nlcs/algebra.hpp"
#include "nlcs/fock.hpp"
#include "nlcs/specfun.hpp"

namespace nlcs {

namespace {

using cd = std::complex<double>;

constexpr Index max_default_dim = 4096;

cd i_power(Index m)
{
    switch (m % 4) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
    }
}

cd propagator_factor(PropagationSign sign)
{
    return sign == PropagationSign::Positive ? cd(0, 1) : cd(0, -1);
}

void check_spec(const LatticeSpec& spec)
{
    require_dim(spec.dim, "lattice");
}

} // namespace

Index default_lattice_dim(LatticeKind kind, double zmax)
{
    const double z = std::abs(zmax);
    if (!std::isfinite(z))
        throw RangeError("default_lattice_dim: zmax must be finite");
    // top-guide amplitude of the closed form below 1e-10
    const double log_limit = 2 * std::log(1e-10);
    Index n = 64;
    if (kind == LatticeKind::Uniform) {
        // |I_m(z)| <= z^m / m!
        while (n < max_default_dim && 2 * (double(n - 1) * std::log(std::max(z, 1e-300)) - std::lgamma(double(n))) > log_limit)
            ++n;
        return n;
    }
    n = std::max<Index>(n, 50 + static_cast<Index>(std::ceil(120 * z)));
    if (z > 0) {
        const double log_tanh = std::log(std::tanh(z));
        const double log_sech2 = -2 * std::log(std::cosh(z));
        while (n < max_default_dim && log_sech2 + 2 * double(n - 1) * log_tanh > log_limit)
            ++n;
    }
    return std::min(n, max_default_dim);
}

int default_steps_per_sample(const LatticeSpec& spec, double zmax, int samples)
{
    check_spec(spec);
    if (samples < 1 || !std::isfinite(zmax))
        throw RangeError("default_steps_per_sample: need samples >= 1 and finite zmax");
    const double norm_bound = spec.kind == LatticeKind::Su11 ? 2.0 * double(spec.dim - 1) : 2.0;
    const double h = std::min(1e-3, 0.02 / std::max(norm_bound, 1.0));
    const double steps = std::ceil(std::abs(zmax) / (samples * h) - 1e-9);
    if (steps > 1e9)
        throw RangeError("default_steps_per_sample: zmax too large for the step bound");
    return std::max(1, static_cast<int>(steps));
}

TruncatedOperator<double> build_hamiltonian(const LatticeSpec& spec)
{
    check_spec(spec);
    if (spec.kind == LatticeKind::Su11) {
        const auto g = su11_generators<double>(spec.dim);
        return g.kplus + g.kminus;
    }
    const auto p = phase_operators<double>(spec.dim);
    return p.vdag + p.v;
}

PropagationResult propagate(const LatticeSpec& spec, const FockVector<double>& input, double zmax, int samples,
                            int steps_per_sample)
{
    check_spec(spec);
    require_same_dim(spec.dim, input.size(), "propagate");
    if (samples < 1 || steps_per_sample < 1)
        throw RangeError("propagate: samples and steps_per_sample must be positive");
    if (!std::isfinite(zmax))
        throw RangeError("propagate: zmax must be finite");
    if (!input.allFinite())
        throw NumericError("propagate: input has non-finite entries");
    const double norm0 = input.squaredNorm();
    if (norm0 == 0.0)
        throw RangeError("propagate: input field is zero");

    // Both Hamiltonians are real, symmetric and tridiagonal with a zero diagonal.
    // Coupling between guides j and j + 1: j + 1 (Su11) or 1 (Uniform).
    const Eigen::VectorXd coupling = spec.kind == LatticeKind::Su11
                                         ? Eigen::VectorXd(Eigen::VectorXd::LinSpaced(spec.dim - 1, 1.0, double(spec.dim - 1)))
                                         : Eigen::VectorXd(Eigen::VectorXd::Ones(spec.dim - 1));
    const cd factor = propagator_factor(spec.sign);
    const double step = zmax / (double(samples) * steps_per_sample);
    const Index top = spec.dim - 1;

    PropagationResult out;
    out.z_grid.reserve(samples + 1);
    out.fields.reserve(samples + 1);
    out.z_grid.push_back(0.0);
    out.fields.push_back(input);
    out.edge_leakage = std::norm(input(top)) / norm0;

    const Index n = spec.dim;
    const auto rhs = [&](const FockVector<double>& e) -> FockVector<double> {
        FockVector<double> he = FockVector<double>::Zero(n);
        if (n > 1) {
            he.head(n - 1) = coupling.cwiseProduct(e.tail(n - 1));
            he.tail(n - 1) += coupling.cwiseProduct(e.head(n - 1));
        }
        return factor * he;
    };
    FockVector<double> e = input;
    for (int s = 1; s <= samples; ++s) {
        for (int k = 0; k < steps_per_sample; ++k) {
            const FockVector<double> k1 = rhs(e);
            const FockVector<double> k2 = rhs(e + (step / 2) * k1);
            const FockVector<double> k3 = rhs(e + (step / 2) * k2);
            const FockVector<double> k4 = rhs(e + step * k3);
            e += (step / 6) * (k1 + 2 * k2 + 2 * k3 + k4);

            const double leak = std::norm(e(top)) / norm0;
            out.edge_leakage = std::max(out.edge_leakage, leak);
            out.norm_drift = std::max(out.norm_drift, std::abs(e.squaredNorm() - norm0));
        }
        if (!e.allFinite())
            throw NumericError("propagate: field became non-finite");
        if (out.edge_leakage > max_edge_leakage)
            throw TruncationError("propagate: edge leakage " + std::to_string(out.edge_leakage) + " at z = " +
                                  std::to_string(step * s * steps_per_sample) + " exceeds " +
                                  std::to_string(max_edge_leakage) + "; increase the number of guides (now " +
                                  std::to_string(spec.dim) + ")");
        out.z_grid.push_back(zmax * double(s) / samples);
        out.fields.push_back(e);
    }
    return out;
}

FockVector<double> propagate_exact(const LatticeSpec& spec, const FockVector<double>& input, double z)
{
    require_same_dim(spec.dim, input.size(), "propagate_exact");
    return act(expm(build_hamiltonian(spec), propagator_factor(spec.sign) * z), input);
}

std::complex<double> impulse_analytic(const LatticeSpec& spec, Index m, double z, Index input_guide)
{
    if (input_guide != 0)
        throw UnsupportedOracleError("impulse_analytic: closed forms exist only for input at guide 0 (got " +
                                     std::to_string(input_guide) + ")");
    if (m < 0)
        throw RangeError("impulse_analytic: guide index must be non-negative");
    if (!std::isfinite(z) || z < 0)
        throw RangeError("impulse_analytic: z must be finite and non-negative");
    if (z == 0.0)
        return m == 0 ? cd(1) : cd(0);

    cd value;
    if (spec.kind == LatticeKind::Su11) {
        const double magnitude = std::exp(-std::log(std::cosh(z)) + double(m) * std::log(std::tanh(z)));
        value = magnitude * i_power(m);
    } else {
        const std::vector<double> j = bessel_j_sequence(static_cast<int>(m + 1), 2 * z);
        value = i_power(m) * ((m + 1.0) * j[m + 1] / z);
    }
    return spec.sign == PropagationSign::Positive ? value : std::conj(value);
}

FockVector<double> impulse_profile(const LatticeSpec& spec, Index count, double z)
{
    if (count < 1)
        throw RangeError("impulse_profile: count must be positive");
    if (!std::isfinite(z) || z < 0)
        throw RangeError("impulse_profile: z must be finite and non-negative");
    FockVector<double> out = FockVector<double>::Zero(count);
    if (z == 0.0) {
        out(0) = 1.0;
        return out;
    }
    if (spec.kind == LatticeKind::Su11) {
        for (Index m = 0; m < count; ++m)
            out(m) = impulse_analytic(spec, m, z);
        return out;
    }
    const std::vector<double> j = bessel_j_sequence(static_cast<int>(count), 2 * z);
    for (Index m = 0; m < count; ++m) {
        const cd value = i_power(m) * ((m + 1.0) * j[m + 1] / z);
        out(m) = spec.sign == PropagationSign::Positive ? value : std::conj(value);
    }
    return out;
}

double impulse_norm(LatticeKind kind, double z, Index terms)
{
    if (terms < 1)
        throw RangeError("impulse_norm: terms must be positive");
    const LatticeSpec spec{kind, std::max<Index>(terms, 2), PropagationSign::Positive};
    if (kind == LatticeKind::Uniform)
        return impulse_profile(spec, terms, std::abs(z)).squaredNorm();
    if (z == 0.0)
        return 1.0;
    const double t2 = std::tanh(z) * std::tanh(z);
    const double s2 = 1.0 / (std::cosh(z) * std::cosh(z));
    double sum = 0.0;
    double power = 1.0;
    for (Index m = 0; m < terms; ++m) {
        sum += s2 * power;
        power *= t2;
    }
    return sum;
}

double compare_to_oracle(const PropagationResult& result, const LatticeSpec& spec)
{
    if (result.fields.empty())
        throw RangeError("compare_to_oracle: empty propagation result");
    const FockVector<double>& initial = result.fields.front();
    require_same_dim(spec.dim, initial.size(), "compare_to_oracle");
    if (initial != basis_state(spec.dim, 0))
        throw UnsupportedOracleError("compare_to_oracle: closed forms need a unit input at guide 0");

    const Index guides = spec.dim - lattice_edge_band;
    double worst = 0.0;
    for (std::size_t s = 0; s < result.fields.size(); ++s) {
        const FockVector<double> exact = impulse_profile(spec, guides, result.z_grid[s]);
        worst = std::max(worst, (result.fields[s].head(guides) - exact).cwiseAbs().maxCoeff());
    }
    return worst;
}

} // namespace nlcs
