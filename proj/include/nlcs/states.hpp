#ifndef NLCS_STATES_HPP
#define NLCS_STATES_HPP

#include <complex>
#include <optional>

#include "nlcs/core.hpp"

namespace nlcs {

enum class StateFamily { Phase, BarutGirardello, London, Su11Perelomov };

/// Which state to build. param is phi (real part) for Phase and alpha
/// otherwise; London needs a real alpha.
struct StateSpec {
    StateFamily family = StateFamily::Phase;
    std::complex<double> param{};
    double bargmann_k = 0.5;
    Index dim = 64;
};

/// Throws RangeError when spec violates its family's constraints.
void validate(const StateSpec& spec);

/// Builds spec from its amplitude series.
FockVector<double> make_state(const StateSpec& spec);

/// c_j = exp(i phi (j + 1/2)) / sqrt(2 pi). Deliberately not normalized:
/// the squared norm is N / (2 pi).
FockVector<double> phase_state(double phi, Index n);

/// (1/sqrt(2 pi)) exp(e^{i phi} K+) exp(i phi K0) exp(-e^{-i phi} K-) |0>,
/// evaluated with expm in dimension n + guard and cut to n.
FockVector<double> phase_state_perelomov(double phi, Index n, std::optional<Index> guard = std::nullopt);

/// Barut-Girardello state of K-: c_j = alpha^j / (j! sqrt(I_0(2|alpha|))).
FockVector<double> bg_state(std::complex<double> alpha, Index n);

/// I_0(2|alpha|)^{-1/2} exp(alpha V^dagger) exp(-conj(alpha) V) |0>, with
/// expm in dimension n + guard. Default guard: ceil(2 e |alpha|) + 32.
FockVector<double> bg_state_ordered(std::complex<double> alpha, Index n, std::optional<Index> guard = std::nullopt);

/// London nonlinear coherent state c_j = (j + 1) J_{j+1}(2 alpha) / alpha;
/// the vacuum at alpha = 0.
FockVector<double> london_state(double alpha, Index n);

/// exp(alpha (V^dagger - V)) |0> with expm in dimension n + guard. The
/// default guard puts |alpha|^M / M! below 1e-18 at the working cutoff M.
FockVector<double> london_state_ordered(double alpha, Index n, std::optional<Index> guard = std::nullopt);

/// Relative threshold for the Bessel-root guard of deformed_annihilation.
inline constexpr double default_root_tolerance = 1e-10;

/// C_alpha = f(n) sqrt(n + 1) a with f(n) = alpha J_{n+1}(2 alpha) / ((n + 2) J_{n+2}(2 alpha)).
///
/// Throws SingularityError naming the offending level when 2 alpha sits on a
/// zero of some J_{n+2}, n = 0..N-2. Only orders below 2|alpha| are tested:
/// J_v has no zeros in (0, v].
TruncatedOperator<double> deformed_annihilation(double alpha, Index n,
                                                double root_tolerance = default_root_tolerance);

/// The same operator assembled as g(K0) K- with
/// g(K0) = alpha J_{K0+1/2}(2 alpha) / ((K0 + 3/2) J_{K0+3/2}(2 alpha)).
TruncatedOperator<double> deformed_annihilation_su11(double alpha, Index n,
                                                     double root_tolerance = default_root_tolerance);

/// SU(1,1) Perelomov state with Bargmann index k:
/// c_m = (1 - |mu|^2)^k sqrt(Gamma(2k + m) / (m! Gamma(2k))) mu^m,
/// mu = (alpha / |alpha|) tanh|alpha|.
FockVector<double> su11_perelomov_state(std::complex<double> alpha, double k, Index n);

/// ||(op v - lambda v) restricted to levels 0..N-1-exclude_top|| / ||v||.
double eigen_residual(const TruncatedOperator<double>& op, const FockVector<double>& v, std::complex<double> lambda,
                      Index exclude_top);

} // namespace nlcs

#endif
