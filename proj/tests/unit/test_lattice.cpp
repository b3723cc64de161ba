#include <doctest.h>

#include "nlcs/lattice.hpp"
#include "nlcs/states.hpp"

using namespace nlcs;
using cd = std::complex<double>;

TEST_CASE("Hamiltonians")
{
    const auto u = build_hamiltonian({LatticeKind::Uniform, 3});
    CHECK(u.entries(1, 0) == cd(1));
    CHECK(u.entries(2, 1) == cd(1));
    CHECK(u.entries.diagonal().isZero());
    CHECK(u.entries == u.entries.adjoint());

    const auto s = build_hamiltonian({LatticeKind::Su11, 3});
    CHECK(s.entries(1, 0) == cd(1));
    CHECK(s.entries(2, 1) == cd(2));
    CHECK(s.entries(0, 2) == cd(0));
    CHECK(s.entries == s.entries.adjoint());
    CHECK(s.edge_band == lattice_edge_band);

    CHECK_THROWS_AS(build_hamiltonian({LatticeKind::Su11, 1}), DimensionError);
}

TEST_CASE("closed-form impulse functions")
{
    const LatticeSpec su11{LatticeKind::Su11, 64};
    const LatticeSpec uniform{LatticeKind::Uniform, 64};
    CHECK(std::abs(impulse_analytic(su11, 1, 1.0) - cd(0, 0.493554347564573075)) <= 1e-15);
    CHECK(std::abs(impulse_analytic(uniform, 1, 1.0) - cd(0, 0.705668057231275438)) <= 1e-15);
    CHECK(std::abs(impulse_analytic(su11, 0, 1.0) - cd(0.648054273663885399575)) <= 1e-15);

    for (const auto& spec : {su11, uniform}) {
        CHECK(impulse_analytic(spec, 0, 0.0) == cd(1));
        CHECK(impulse_analytic(spec, 3, 0.0) == cd(0));
        CHECK_THROWS_AS(impulse_analytic(spec, 0, 1.0, 2), UnsupportedOracleError);
        CHECK_THROWS_AS(impulse_analytic(spec, 0, -1.0), RangeError);
    }

    const LatticeSpec flipped{LatticeKind::Su11, 64, PropagationSign::Negative};
    CHECK(impulse_analytic(flipped, 3, 0.8) == std::conj(impulse_analytic(su11, 3, 0.8)));

    const auto profile = impulse_profile(uniform, 20, 1.7);
    for (Index m = 0; m < 20; m += 4)
        CHECK(std::abs(profile(m) - impulse_analytic(uniform, m, 1.7)) <= 1e-16);
}

TEST_CASE("closed forms are normalized")
{
    for (double z = 0.25; z <= 5.0; z += 0.25) {
        CAPTURE(z);
        CHECK(std::abs(impulse_norm(LatticeKind::Uniform, z, 96) - 1) <= 1e-10);
        CHECK(std::abs(impulse_norm(LatticeKind::Su11, z, 300000) - 1) <= 1e-10);
    }
}

TEST_CASE("uniform lattice field is the London state up to phases")
{
    const double z = 1.6;
    const auto field = impulse_profile({LatticeKind::Uniform, 40}, 40, z);
    const auto london = london_state(z, 40);
    const cd i(0, 1);
    for (Index m = 0; m < 40; ++m)
        CHECK(std::abs(field(m) - std::pow(i, double(m)) * london(m)) <= 1e-15);
}

TEST_CASE("zero-length propagation returns the input")
{
    const LatticeSpec spec{LatticeKind::Uniform, 16};
    const auto r = propagate(spec, basis_state(16, 0), 0.0, 5, 3);
    REQUIRE(r.z_grid.size() == 6);
    CHECK(r.fields.back() == basis_state(16, 0));
    CHECK(compare_to_oracle(r, spec) == 0.0);
}

TEST_CASE("single-guide propagation against closed forms")
{
    const LatticeSpec uniform{LatticeKind::Uniform, 64};
    const auto u = propagate(uniform, basis_state(64, 0), 1.0, 10, 100);
    CHECK(std::abs(u.fields.back()(0)) == doctest::Approx(0.576724807756873387).epsilon(1e-10));
    CHECK(compare_to_oracle(u, uniform) <= 1e-10);

    const LatticeSpec su11{LatticeKind::Su11, 400};
    const auto s = propagate(su11, basis_state(400, 0), 1.0, 10, default_steps_per_sample(su11, 1.0, 10));
    CHECK(std::abs(s.fields.back()(0)) == doctest::Approx(0.648054273663885399575).epsilon(1e-10));
    CHECK(compare_to_oracle(s, su11) <= 1e-10);
    CHECK(s.norm_drift <= 1e-10);
    CHECK(s.edge_leakage <= 1e-12);

    const LatticeSpec flipped{LatticeKind::Su11, 200, PropagationSign::Negative};
    const auto f = propagate(flipped, basis_state(200, 0), 0.7, 7, 200);
    CHECK(compare_to_oracle(f, flipped) <= 1e-10);
}

TEST_CASE("other input guides follow the matrix exponential")
{
    for (const LatticeSpec spec : {LatticeSpec{LatticeKind::Uniform, 64}, LatticeSpec{LatticeKind::Su11, 160}}) {
        const Index n = 3;
        const double z = 0.6;
        const auto r = propagate(spec, basis_state(spec.dim, n), z, 6, 200);
        CHECK((r.fields.back() - propagate_exact(spec, basis_state(spec.dim, n), z)).cwiseAbs().maxCoeff() <= 1e-9);
        CHECK(r.norm_drift <= 1e-10);
        CHECK_THROWS_AS(compare_to_oracle(r, spec), UnsupportedOracleError);
    }
}

TEST_CASE("general inputs are not renormalized")
{
    const LatticeSpec spec{LatticeKind::Uniform, 32};
    FockVector<double> input = FockVector<double>::Zero(32);
    input(4) = cd(2.0, 1.0);
    input(5) = cd(0.0, -3.0);
    const auto r = propagate(spec, input, 0.5, 2, 100);
    CHECK(r.fields.front() == input);
    CHECK(r.fields.back().squaredNorm() == doctest::Approx(14.0).epsilon(1e-12));
}

TEST_CASE("truncation overflow is detected")
{
    const LatticeSpec spec{LatticeKind::Uniform, 8};
    CHECK_THROWS_AS(propagate(spec, basis_state(8, 0), 5.0, 10, 100), TruncationError);
}

TEST_CASE("argument checks")
{
    const LatticeSpec spec{LatticeKind::Uniform, 8};
    CHECK_THROWS_AS(propagate(spec, basis_state(9, 0), 1.0, 1, 1), DimensionError);
    CHECK_THROWS_AS(propagate(spec, basis_state(8, 0), 1.0, 0, 1), RangeError);
    CHECK_THROWS_AS(propagate(spec, FockVector<double>::Zero(8), 1.0, 1, 1), RangeError);
}

TEST_CASE("default sizing keeps the top-guide amplitude below 1e-10")
{
    for (double z : {0.5, 1.0, 2.0, 2.5}) {
        CAPTURE(z);
        const Index su = default_lattice_dim(LatticeKind::Su11, z);
        CHECK(su >= 50 + static_cast<Index>(120 * z));
        CHECK(std::abs(impulse_analytic({LatticeKind::Su11, su}, su - 1, z)) <= 1e-10);
        const Index un = default_lattice_dim(LatticeKind::Uniform, z);
        CHECK(un >= 64);
        CHECK(std::abs(impulse_analytic({LatticeKind::Uniform, un}, un - 1, z)) <= 1e-10);
    }
    CHECK(default_lattice_dim(LatticeKind::Su11, 100.0) == 4096);
}

TEST_CASE("default step count")
{
    CHECK(default_steps_per_sample({LatticeKind::Uniform, 64}, 5.0, 200) == 25);
    // 2 * 399 * h <= 0.02
    CHECK(default_steps_per_sample({LatticeKind::Su11, 400}, 2.0, 200) == 399);
}
