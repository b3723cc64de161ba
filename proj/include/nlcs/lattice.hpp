#ifndef NLCS_LATTICE_HPP
#define NLCS_LATTICE_HPP

#include <complex>
#include <vector>

#include "nlcs/core.hpp"

namespace nlcs {

/// Su11: Glauber-Fock-type array, H = K+ + K- (coupling j + 1 between guides
/// j and j + 1). Uniform: homogeneous array, H = V^dagger + V.
enum class LatticeKind { Su11, Uniform };

/// Direction of the propagator. Positive: -i dE/dz = H E, so
/// E(z) = exp(+i z H) E(0); negative: i dE/dz = H E.
enum class PropagationSign { Positive, Negative };

struct LatticeSpec {
    LatticeKind kind = LatticeKind::Uniform;
    Index dim = 64;
    PropagationSign sign = PropagationSign::Positive;
};

struct PropagationResult {
    std::vector<double> z_grid;
    std::vector<FockVector<double>> fields;
    /// max_z | ||E(z)||^2 - ||E(0)||^2 |
    double norm_drift = 0.0;
    /// max_z |E_{N-1}(z)|^2 / ||E(0)||^2
    double edge_leakage = 0.0;
};

/// Leakage above which propagate() reports a truncation overflow.
inline constexpr double max_edge_leakage = 1e-8;

/// Suggested number of guides for propagating an impulse to zmax: the
/// closed-form amplitude at the top guide stays below 1e-10. At least 64;
/// Su11 also at least 50 + 120 zmax. Capped at 4096.
Index default_lattice_dim(LatticeKind kind, double zmax);

/// Edge band of either Hamiltonian: only the top guide feels the truncation.
inline constexpr Index lattice_edge_band = 1;

TruncatedOperator<double> build_hamiltonian(const LatticeSpec& spec);

/// RK4 substeps per output sample keeping h <= 1e-3 and h * ||H|| <= 0.02.
int default_steps_per_sample(const LatticeSpec& spec, double zmax, int samples);

/// Fixed-step classical RK4 on dE/dz = +-i H E with
/// h = zmax / (samples * steps_per_sample). Fields are recorded at the
/// samples + 1 points z = 0, zmax / samples, ..., zmax.
/// Throws TruncationError when edge_leakage exceeds max_edge_leakage.
PropagationResult propagate(const LatticeSpec& spec, const FockVector<double>& input, double zmax, int samples,
                            int steps_per_sample);

/// exp(+-i z H) applied to input via expm; the independent route to propagate().
FockVector<double> propagate_exact(const LatticeSpec& spec, const FockVector<double>& input, double z);

/// Closed-form impulse function I_{m,0}(z) for a unit input at guide 0:
/// Su11 -> sech z (i tanh z)^m, Uniform -> i^m (m + 1) J_{m+1}(2z) / z,
/// complex-conjugated for PropagationSign::Negative.
/// Throws UnsupportedOracleError for input_guide != 0.
std::complex<double> impulse_analytic(const LatticeSpec& spec, Index m, double z, Index input_guide = 0);

/// All guides 0..count-1 of impulse_analytic at once.
FockVector<double> impulse_profile(const LatticeSpec& spec, Index count, double z);

/// sum_m |I_{m,0}(z)|^2 over m < terms, from the closed forms.
double impulse_norm(LatticeKind kind, double z, Index terms);

/// Max |numeric - analytic| over sampled z and guides below N - edge_band.
/// The result must come from a unit input at guide 0.
double compare_to_oracle(const PropagationResult& result, const LatticeSpec& spec);

} // namespace nlcs

#endif
