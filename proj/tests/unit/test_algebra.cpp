#include <doctest.h>

#include <numbers>
#include <random>

#include "nlcs/algebra.hpp"
#include "nlcs/quad.hpp"

using namespace nlcs;
using cd = std::complex<double>;

namespace {

// Two-dimensional non-unitary representation of the same Lie algebra:
// K0 = diag(1/2, -1/2), K+ = [[0, 1], [0, 0]], K- = [[0, 0], [-1, 0]].
Eigen::Matrix2cd rep_product(const BCHParams<double>& p)
{
    Eigen::Matrix2cd up = Eigen::Matrix2cd::Identity();
    up(0, 1) = p.plus;
    Eigen::Matrix2cd down = Eigen::Matrix2cd::Identity();
    down(1, 0) = -p.minus;
    Eigen::Matrix2cd mid = Eigen::Matrix2cd::Zero();
    const cd root = std::sqrt(p.zero);
    mid(0, 0) = root;
    mid(1, 1) = 1.0 / root;
    return p.ordering == BchOrdering::NormalFirst ? Eigen::Matrix2cd(up * mid * down)
                                                  : Eigen::Matrix2cd(down * mid * up);
}

// Equal as group elements: the square root branch only flips the overall sign.
double rep_gap(const BCHParams<double>& a, const BCHParams<double>& b)
{
    const Eigen::Matrix2cd x = rep_product(a);
    const Eigen::Matrix2cd y = rep_product(b);
    return std::min((x - y).cwiseAbs().maxCoeff(), (x + y).cwiseAbs().maxCoeff());
}

double param_gap(const BCHParams<double>& a, const BCHParams<double>& b)
{
    return std::max({std::abs(a.plus - b.plus), std::abs(a.zero - b.zero), std::abs(a.minus - b.minus)});
}

BCHParams<double> random_params(std::mt19937_64& rng, double radius, BchOrdering ordering)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double tau = 2 * std::numbers::pi;
    return {std::polar(radius * u(rng), tau * u(rng)), std::polar(1.0, tau * u(rng)),
            std::polar(radius * u(rng), tau * u(rng)), ordering};
}

} // namespace

TEST_CASE("generator matrix elements")
{
    const auto g = su11_generators<double>(5);
    CHECK(g.k0.entries(3, 3) == cd(3.5));
    CHECK(g.kplus.entries(3, 2) == cd(3.0));
    CHECK(g.kminus.entries(2, 3) == cd(3.0));
    CHECK(g.kplus.edge_band == 1);
    CHECK(g.kminus.edge_band == 0);
    CHECK(g.bargmann_k == 0.5);
}

TEST_CASE("commutation relations outside the edge band")
{
    const Index n = 32;
    const auto g = su11_generators<double>(n);
    const auto c1 = commutator(g.k0, g.kplus);
    const auto c2 = commutator(g.k0, g.kminus);
    const auto c3 = commutator(g.kplus, g.kminus);
    CHECK(max_abs_deviation<double>(c1.entries, g.kplus.entries, c1.clean_dim()) <= 1e-12);
    CHECK(max_abs_deviation<double>(c2.entries, -g.kminus.entries, c2.clean_dim()) <= 1e-12);
    CHECK(max_abs_deviation<double>(c3.entries, -2.0 * g.k0.entries, c3.clean_dim()) <= 1e-12);
}

TEST_CASE("phase operators")
{
    const Index n = 6;
    const auto p = phase_operators<double>(n);
    CHECK(act(p.v, basis_state(n, 3)) == basis_state(n, 2));
    CHECK(act(p.vdag, basis_state(n, 0)) == basis_state(n, 1));
    CHECK(act(p.v, basis_state(n, 0)).norm() == 0.0);

    const auto vvd = p.v * p.vdag;
    CHECK(max_abs_deviation<double>(vvd.entries, identity(n).entries, vvd.clean_dim()) == 0.0);
    DenseMatrix<double> projector = identity(n).entries;
    projector(0, 0) = 0.0;
    CHECK((p.vdag * p.v).entries == projector);

    const auto g = su11_generators<double>(n);
    const auto shifted = diagonal<double>(n, [&](Index j) { return 1.0 / (g.k0.entries(j, j).real() + 0.5); });
    for (Index j = 0; j < n; ++j) {
        const auto e = basis_state(n, j);
        CHECK((act(shifted * g.kminus, e) - act(p.v, e)).norm() <= 1e-15);
    }
    CHECK(max_abs_deviation<double>((inverse_sqrt_number_plus_one(n) * annihilation(n)).entries, p.v.entries, n) <=
          1e-15);
}

TEST_CASE("parameter maps: worked values")
{
    const BCHParams<double> unit{0.0, 1.0, 0.0, BchOrdering::AntinormalFirst};
    CHECK(param_gap(bch_antinormal_to_normal(unit), {0.0, 1.0, 0.0}) == 0.0);

    const cd phase = std::polar(1.0, 0.9);
    const auto a = bch_antinormal_to_normal<double>({1.0, phase, 0.0, BchOrdering::AntinormalFirst});
    CHECK(a.ordering == BchOrdering::NormalFirst);
    CHECK(param_gap(a, {phase, phase, 0.0}) <= 1e-15);

    const auto half = bch_antinormal_to_normal<double>({0.5, 1.0, 0.5, BchOrdering::AntinormalFirst});
    CHECK(param_gap(half, {2.0 / 3.0, 16.0 / 9.0, 2.0 / 3.0}) <= 1e-15);

    const auto b = bch_normal_to_antinormal<double>({2.0 / 3.0, 16.0 / 9.0, 2.0 / 3.0, BchOrdering::NormalFirst});
    CHECK(b.ordering == BchOrdering::AntinormalFirst);
    CHECK(param_gap(b, {0.5, 1.0, 0.5}) <= 1e-15);

    const auto back = bch_normal_to_antinormal<double>({phase, phase, 0.0, BchOrdering::NormalFirst});
    CHECK(param_gap(back, {1.0, phase, 0.0}) <= 1e-15);
}

TEST_CASE("parameter maps: errors")
{
    CHECK_THROWS_AS(bch_antinormal_to_normal<double>({1.0, 1.0, 1.0, BchOrdering::AntinormalFirst}),
                    SingularityError);
    CHECK_THROWS_AS(bch_normal_to_antinormal<double>({1.0, 1.0, 1.0, BchOrdering::NormalFirst}), SingularityError);
    CHECK_THROWS_AS(bch_antinormal_to_normal<double>({0.1, 0.0, 0.1, BchOrdering::AntinormalFirst}),
                    SingularityError);
    CHECK_THROWS_AS(bch_antinormal_to_normal<double>({0.1, 1.0, 0.1, BchOrdering::NormalFirst}), RangeError);
    CHECK_THROWS_AS(bch_normal_to_antinormal<double>({0.1, 1.0, 0.1, BchOrdering::AntinormalFirst}), RangeError);
}

TEST_CASE("parameter maps are mutually inverse and agree with the 2x2 representation")
{
    std::mt19937_64 rng(7);
    double round_trip = 0.0;
    double rep = 0.0;
    for (int t = 0; t < 500; ++t) {
        const auto ordering = t % 2 ? BchOrdering::NormalFirst : BchOrdering::AntinormalFirst;
        const auto p = random_params(rng, 0.9, ordering);
        const auto q = bch_convert(p);
        CHECK(q.ordering != p.ordering);
        round_trip = std::max(round_trip, param_gap(bch_convert(q), p));
        rep = std::max(rep, rep_gap(p, q));
    }
    CHECK(round_trip <= 1e-13);
    CHECK(rep <= 1e-13);
}

TEST_CASE("ordered products agree in the Fock representation")
{
    CHECK(verify_bch<double>({0.0, 1.0, 0.0, BchOrdering::AntinormalFirst}, 64) <= 1e-13);

    const BCHParams<quad> phase{quad(1), std::polar(quad(1), quad(0.7)), quad(0), BchOrdering::AntinormalFirst};
    CHECK(static_cast<double>(verify_bch(phase, 64, Index(16))) <= 1e-9);

    std::mt19937_64 rng(99);
    for (auto ordering : {BchOrdering::AntinormalFirst, BchOrdering::NormalFirst}) {
        const auto p = random_params(rng, 0.3, ordering);
        const BCHParams<quad> pq{Complex<quad>(p.plus.real(), p.plus.imag()),
                                 Complex<quad>(p.zero.real(), p.zero.imag()),
                                 Complex<quad>(p.minus.real(), p.minus.imag()), p.ordering};
        CHECK(static_cast<double>(verify_bch(pq, 32)) <= 1e-9);
    }
}

TEST_CASE("ordered product is exact for a pure K+ exponential")
{
    const auto prod = ordered_product<double>({0.4, 1.0, 0.0, BchOrdering::NormalFirst}, 10);
    CHECK(std::abs(prod(1, 0) - cd(0.4)) <= 1e-15);
    CHECK(std::abs(prod(2, 0) - cd(0.4 * 0.4)) <= 1e-15); // C(2,0) * 0.4^2
    CHECK(prod(0, 1) == cd(0.0));
    CHECK(ordered_product<double>({0.4, 1.0, 0.0, BchOrdering::NormalFirst}, 10, Index(4)).rows() == 4);
}

TEST_CASE("antinormal guard rejects divergent products")
{
    CHECK(antinormal_guard<double>({0.1, 1.0, 0.1, BchOrdering::AntinormalFirst}, 48, 400) >= 0);
    CHECK(antinormal_guard<double>({0.0, 1.0, 0.5, BchOrdering::AntinormalFirst}, 48, 400) == 0);
    CHECK_THROWS_AS(antinormal_guard<double>({0.9, 2.0, 0.9, BchOrdering::AntinormalFirst}, 48, 400), RangeError);
}

TEST_CASE("rotation conjugation")
{
    CHECK(rotation_conjugation_check(0.0, 16) <= 1e-15);
    CHECK(rotation_conjugation_check(1.0, 64) <= 1e-9);
    CHECK(rotation_conjugation_check(3.0, 256) <= 1e-9);
    CHECK(rotation_conjugation_check(-2.0, 64) <= 1e-9);
    CHECK_THROWS_AS(rotation_conjugation_check(3.0, 16), RangeError);
}
