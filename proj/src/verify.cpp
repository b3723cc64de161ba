#include "nlcs/verify.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "nlcs/lattice.hpp"
#include "nlcs/quad.hpp"
#include "nlcs/specfun.hpp"
#include "nlcs/states.hpp"

namespace nlcs {

namespace {

using cd = std::complex<double>;

template <typename To, typename From>
BCHParams<To> cast_params(const BCHParams<From>& p)
{
    const auto c = [](const Complex<From>& z) { return Complex<To>(To(z.real()), To(z.imag())); };
    return {c(p.plus), c(p.zero), c(p.minus), p.ordering};
}

double block_gap(const DenseMatrix<double>& a, const DenseMatrix<double>& b, Index band)
{
    return max_abs_deviation<double>(a, b, a.rows() - band);
}

std::vector<CheckResult> specfun_suite()
{
    std::vector<CheckResult> out;
    double recurrence = 0.0;
    for (double x = 0.1; x <= 20.0; x += 0.37)
        for (int m = 1; m <= 60; ++m) {
            const double jm = bessel_j(m, x);
            const double r = std::abs(bessel_j(m - 1, x) + bessel_j(m + 1, x) - 2.0 * m / x * jm);
            recurrence = std::max(recurrence, r / std::max(1.0, std::abs(jm)));
        }
    out.push_back({"bessel_j three-term recurrence", recurrence, 1e-11});

    double normalization = 0.0;
    for (double x = 0.0; x <= 20.0; x += 0.5) {
        const auto j = bessel_j_sequence(120, x);
        double s = j[0];
        for (int m = 1; m <= 60; ++m)
            s += 2 * j[2 * m];
        normalization = std::max(normalization, std::abs(s - 1));
    }
    out.push_back({"J_0 + 2 sum J_2m = 1", normalization, 1e-10});

    double london = 0.0;
    for (double z = 0.25; z <= 10.0; z += 0.25) {
        const int terms = static_cast<int>(std::ceil(4 * z)) + 40;
        const auto j = bessel_j_sequence(terms + 1, 2 * z);
        double s = 0.0;
        for (int m = 0; m <= terms; ++m)
            s += std::pow((m + 1) * j[m + 1] / z, 2);
        london = std::max(london, std::abs(s - 1));
    }
    out.push_back({"sum (m+1)^2 J_{m+1}(2z)^2 / z^2 = 1", london, 1e-10});
    return out;
}

std::vector<CheckResult> algebra_suite(Index n)
{
    std::vector<CheckResult> out;
    const auto g = su11_generators<double>(n);
    const auto p = phase_operators<double>(n);

    const auto c0p = commutator(g.k0, g.kplus);
    out.push_back({"[K0, K+] = K+", block_gap(c0p.entries, g.kplus.entries, c0p.edge_band), 1e-12});
    const auto c0m = commutator(g.k0, g.kminus);
    out.push_back({"[K0, K-] = -K-", block_gap(c0m.entries, -g.kminus.entries, c0m.edge_band), 1e-12});
    const auto cpm = commutator(g.kplus, g.kminus);
    out.push_back({"[K+, K-] = -2 K0", block_gap(cpm.entries, -2.0 * g.k0.entries, cpm.edge_band), 1e-12});

    const auto vvd = p.v * p.vdag;
    out.push_back({"V V^dagger = 1", block_gap(vvd.entries, identity(n).entries, vvd.edge_band), 1e-12});
    DenseMatrix<double> projector = identity(n).entries;
    projector(0, 0) = 0.0;
    out.push_back({"V^dagger V = 1 - |0><0|", block_gap((p.vdag * p.v).entries, projector, 0), 0.0});

    const auto shifted = diagonal<double>(n, [&](Index j) { return 1.0 / (g.k0.entries(j, j).real() + 0.5); });
    out.push_back({"(K0 + 1/2)^-1 K- = V", block_gap((shifted * g.kminus).entries, p.v.entries, 0), 1e-12});
    out.push_back({"(n + 1)^-1/2 a = V",
                   block_gap((inverse_sqrt_number_plus_one(n) * annihilation(n)).entries, p.v.entries, 0), 1e-12});

    const cd phase = std::polar(1.0, 0.7);
    const BCHParams<double> phase_params{1.0, phase, 0.0, BchOrdering::AntinormalFirst};
    const BCHParams<double> unit{0.0, 1.0, 0.0, BchOrdering::AntinormalFirst};
    out.push_back({"BCH identity parameters", verify_bch(unit, n), 1e-13});
    out.push_back({"BCH round trip (phase-state parameters)", bch_round_trip_error(phase_params), 1e-13});
    out.push_back({"BCH phase-state parameters, phi = 0.7", verify_bch_quad(phase_params, n), 1e-9});

    std::mt19937_64 rng(20140611);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double tau = 2 * std::numbers::pi;
    double random_residual = 0.0;
    double random_round_trip = 0.0;
    for (int t = 0; t < 3; ++t) {
        const BCHParams<double> b{std::polar(0.3 * unif(rng), tau * unif(rng)), std::polar(1.0, tau * unif(rng)),
                                  std::polar(0.3 * unif(rng), tau * unif(rng)), BchOrdering::AntinormalFirst};
        random_residual = std::max(random_residual, verify_bch_quad(b, n));
        random_round_trip = std::max(random_round_trip, bch_round_trip_error(b));
    }
    out.push_back({"BCH random |X+-| <= 0.3 (3 sets)", random_residual, 1e-9});
    out.push_back({"BCH round trip (random sets)", random_round_trip, 1e-13});

    double normal_residual = 0.0;
    for (int t = 0; t < 3; ++t) {
        const BCHParams<double> a{std::polar(0.3 * unif(rng), tau * unif(rng)), std::polar(1.0, tau * unif(rng)),
                                  std::polar(0.3 * unif(rng), tau * unif(rng)), BchOrdering::NormalFirst};
        normal_residual = std::max(normal_residual, verify_bch_quad(a, n));
    }
    out.push_back({"BCH random normal-ordered input (3 sets)", normal_residual, 1e-9});

    if (n >= 8)
        out.push_back({"rotation conjugation, alpha = 1", rotation_conjugation_check(1.0, n), 1e-9});
    return out;
}

std::vector<CheckResult> states_suite(Index n)
{
    std::vector<CheckResult> out;
    const auto p = phase_operators<double>(n);
    const auto g = su11_generators<double>(n);

    out.push_back({"V |phi> = e^{i phi} |phi>, phi = 1.1",
                   eigen_residual(p.v, phase_state(1.1, n), std::polar(1.0, 1.1), 1), 1e-12});
    const Index small = std::min<Index>(n, 32);
    const double perelomov = (phase_state_perelomov(2.0, small, 96) - phase_state(2.0, small)).cwiseAbs().maxCoeff();
    out.push_back({"phase state series = Perelomov form, phi = 2", perelomov, 1e-8});

    const cd alpha(1.0, 0.5);
    out.push_back({"K- |alpha_BG> = alpha |alpha_BG>", eigen_residual(g.kminus, bg_state(alpha, n), alpha, 1), 1e-8});
    out.push_back({"Barut-Girardello series = ordered form, alpha = 1.5",
                   (bg_state_ordered(1.5, n) - bg_state(1.5, n)).cwiseAbs().maxCoeff(), 1e-9});
    out.push_back({"London series = exp(alpha (V^dagger - V)) |0>, alpha = 2",
                   (london_state_ordered(2.0, n) - london_state(2.0, n)).cwiseAbs().maxCoeff(), 1e-9});
    out.push_back({"C_alpha |alpha> = alpha |alpha>, alpha = 1.3",
                   eigen_residual(deformed_annihilation(1.3, n), london_state(1.3, n), 1.3, 1), 1e-8});
    out.push_back({"C_alpha via n and a = C_alpha via K0 and K-",
                   max_abs_deviation<double>(deformed_annihilation(1.3, n).entries,
                                             deformed_annihilation_su11(1.3, n).entries, n),
                   1e-12});
    const Index wide = std::max<Index>(n, 128);
    out.push_back({"SU(1,1) Perelomov norm, alpha = 1 + i",
                   std::abs(su11_perelomov_state(cd(1, 1), 0.5, wide).squaredNorm() - 1), 1e-10});
    return out;
}

std::vector<CheckResult> lattice_suite()
{
    std::vector<CheckResult> out;
    const LatticeSpec uniform{LatticeKind::Uniform, 64, PropagationSign::Positive};
    const auto ur = propagate(uniform, basis_state(64, 0), 5.0, 200, 20);
    out.push_back({"uniform lattice impulse vs closed form", compare_to_oracle(ur, uniform), 1e-8});
    out.push_back({"uniform lattice norm drift", ur.norm_drift, 1e-10});

    const Index su11_dim = default_lattice_dim(LatticeKind::Su11, 2.0);
    const LatticeSpec su11{LatticeKind::Su11, su11_dim, PropagationSign::Positive};
    const auto sr = propagate(su11, basis_state(su11_dim, 0), 2.0, 200, default_steps_per_sample(su11, 2.0, 200));
    out.push_back({"Glauber-Fock lattice impulse vs closed form", compare_to_oracle(sr, su11), 1e-8});
    out.push_back({"Glauber-Fock lattice norm drift", sr.norm_drift, 1e-10});
    out.push_back({"Glauber-Fock lattice edge leakage", sr.edge_leakage, 1e-12});

    double norms = 0.0;
    for (double z = 0.25; z <= 5.0; z += 0.25) {
        norms = std::max(norms, std::abs(impulse_norm(LatticeKind::Uniform, z, 96) - 1));
        norms = std::max(norms, std::abs(impulse_norm(LatticeKind::Su11, z, 200000) - 1));
    }
    out.push_back({"closed-form impulse normalization, z <= 5", norms, 1e-10});
    return out;
}

} // namespace

double verify_bch_quad(const BCHParams<double>& params, Index dim, std::optional<Index> edge_exclusion)
{
    return static_cast<double>(verify_bch(cast_params<quad>(params), dim, edge_exclusion));
}

double bch_round_trip_error(const BCHParams<double>& params)
{
    const BCHParams<double> back = bch_convert(bch_convert(params));
    return std::max({std::abs(back.plus - params.plus), std::abs(back.zero - params.zero),
                     std::abs(back.minus - params.minus)});
}

BchCheckReport bch_check(const BCHParams<double>& params, Index dim, std::optional<Index> edge_exclusion,
                         Precision precision, double tolerance)
{
    BchCheckReport report;
    report.input = params;
    report.converted = bch_convert(params);
    const double residual = precision == Precision::Quad ? verify_bch_quad(params, dim, edge_exclusion)
                                                         : verify_bch(params, dim, edge_exclusion);
    report.identity = {"ordered products agree", residual, tolerance};
    report.round_trip = {"parameter map round trip", bch_round_trip_error(params), 1e-13};
    return report;
}

std::vector<CheckResult> run_suite(Suite suite, Index dim)
{
    require_dim(dim, "run_suite");
    std::vector<CheckResult> out;
    const auto append = [&out](std::vector<CheckResult> more) {
        out.insert(out.end(), more.begin(), more.end());
    };
    if (suite == Suite::Specfun || suite == Suite::All)
        append(specfun_suite());
    if (suite == Suite::Algebra || suite == Suite::All)
        append(algebra_suite(dim));
    if (suite == Suite::States || suite == Suite::All)
        append(states_suite(dim));
    if (suite == Suite::Lattice || suite == Suite::All)
        append(lattice_suite());
    return out;
}

} // namespace nlcs
