#include <doctest.h>

#include <numbers>

#include "nlcs/algebra.hpp"
#include "nlcs/specfun.hpp"
#include "nlcs/states.hpp"

using namespace nlcs;
using cd = std::complex<double>;

namespace {

double max_gap(const FockVector<double>& a, const FockVector<double>& b) { return (a - b).cwiseAbs().maxCoeff(); }

} // namespace

TEST_CASE("phase state amplitudes")
{
    const auto v = phase_state(0.0, 4);
    for (Index j = 0; j < 4; ++j) {
        CHECK(v(j).real() == doctest::Approx(0.398942280401432678).epsilon(1e-15));
        CHECK(v(j).imag() == 0.0);
    }
    const auto w = phase_state(1.0, 64);
    CHECK(w.squaredNorm() == doctest::Approx(64 / (2 * std::numbers::pi)).epsilon(1e-14));
    CHECK(std::arg(w(2)) == doctest::Approx(2.5).epsilon(1e-14));
}

TEST_CASE("phase state is an eigenvector of V")
{
    const auto p = phase_operators<double>(64);
    for (double phi : {0.0, 0.7, 2.0, std::numbers::pi - 0.1})
        CHECK(eigen_residual(p.v, phase_state(phi, 64), std::polar(1.0, phi), 1) <= 1e-12);
}

TEST_CASE("phase state from the disentangled exponential product")
{
    for (double phi : {0.0, 0.7, 2.0, std::numbers::pi - 0.1}) {
        CAPTURE(phi);
        CHECK(max_gap(phase_state_perelomov(phi, 32, 96), phase_state(phi, 32)) <= 1e-8);
    }
}

TEST_CASE("Barut-Girardello state")
{
    const auto v = bg_state(1.0, 16);
    CHECK(v(0).real() == doctest::Approx(1.0 / std::sqrt(2.27958530233606726744)).epsilon(1e-14));
    CHECK(v(3).real() == doctest::Approx(v(0).real() / 6.0).epsilon(1e-14));

    const cd alpha(1.2, -0.9);
    CHECK(bg_state(alpha, 80).squaredNorm() == doctest::Approx(1.0).epsilon(1e-13));

    const auto g = su11_generators<double>(64);
    for (cd a : {cd(0.5), cd(1.3), cd(2.0), cd(0.3, 1.1)})
        CHECK(eigen_residual(g.kminus, bg_state(a, 64), a, 1) <= 1e-8);

    for (cd a : {cd(0.5), cd(-1.5, 0.4), cd(0.0, 3.0), cd(2.1, 2.1)}) {
        CAPTURE(a);
        CHECK(max_gap(bg_state_ordered(a, 64), bg_state(a, 64)) <= 1e-9);
    }
}

TEST_CASE("London state")
{
    const auto v = london_state(1.0, 8);
    CHECK(v(0).real() == doctest::Approx(0.576724807756873387).epsilon(1e-14));
    CHECK(v(1).real() == doctest::Approx(2 * 0.352834028615637719).epsilon(1e-14));
    CHECK(london_state(0.0, 8) == basis_state(8, 0));
    CHECK(london_state(2.5, 80).squaredNorm() == doctest::Approx(1.0).epsilon(1e-12));

    for (double a : {0.5, 1.3, 2.0, 3.0, -2.2}) {
        CAPTURE(a);
        CHECK(max_gap(london_state_ordered(a, 64), london_state(a, 64)) <= 1e-9);
    }
}

TEST_CASE("deformed annihilation operator")
{
    for (double a : {0.5, 1.3, 2.0}) {
        CAPTURE(a);
        const auto c = deformed_annihilation(a, 64);
        CHECK(eigen_residual(c, london_state(a, 64), a, 1) <= 1e-8);
        CHECK(max_abs_deviation<double>(c.entries, deformed_annihilation_su11(a, 64).entries, 64) <= 1e-12);
    }
    // alpha = 0 reduces the weight to 1
    CHECK(max_abs_deviation<double>(deformed_annihilation(0.0, 16).entries,
                                    su11_generators<double>(16).kminus.entries, 16) <= 1e-14);
}

TEST_CASE("deformed annihilation rejects Bessel roots")
{
    const double root = 5.13562230184068255630; // first zero of J_2
    CHECK_THROWS_AS(deformed_annihilation(root / 2, 16), SingularityError);
    CHECK_THROWS_AS(deformed_annihilation_su11(root / 2, 16), SingularityError);
    try {
        deformed_annihilation(root / 2, 16);
    } catch (const SingularityError& e) {
        CHECK(std::string(e.what()).find("level n = 0") != std::string::npos);
    }
    CHECK_NOTHROW(deformed_annihilation(root / 2 + 0.01, 16));
}

TEST_CASE("SU(1,1) Perelomov state")
{
    const cd alpha = std::polar(0.8, 0.3);
    const double t = std::tanh(0.8);
    const auto half = su11_perelomov_state(alpha, 0.5, 12);
    for (Index m = 0; m < 12; ++m)
        CHECK(std::abs(half(m) - std::polar(std::pow(t, double(m)) / std::cosh(0.8), 0.3 * m)) <= 1e-15);

    const auto one = su11_perelomov_state(alpha, 1.0, 12);
    for (Index m = 0; m < 12; ++m)
        CHECK(std::abs(one(m)) == doctest::Approx((1 - t * t) * std::sqrt(m + 1.0) * std::pow(t, double(m))));

    CHECK(su11_perelomov_state(cd(1.0, 1.0), 0.5, 200).squaredNorm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(su11_perelomov_state(0.0, 0.5, 6) == basis_state(6, 0));
    CHECK_THROWS_AS(su11_perelomov_state(0.5, 0.0, 6), RangeError);
}

TEST_CASE("state specs are validated")
{
    CHECK_THROWS_AS(validate({StateFamily::London, cd(1, 2), 0.5, 64}), RangeError);
    CHECK_THROWS_AS(validate({StateFamily::BarutGirardello, cd(25), 0.5, 64}), RangeError);
    CHECK_THROWS_AS(validate({StateFamily::Phase, cd(0.5, 0.1), 0.5, 64}), RangeError);
    CHECK_THROWS_AS(validate({StateFamily::Phase, cd(0.5), 0.5, 1}), DimensionError);
    CHECK_THROWS_AS(validate({StateFamily::Su11Perelomov, cd(0.5), -1.0, 8}), RangeError);

    CHECK(make_state({StateFamily::London, cd(2.0), 0.5, 16}) == london_state(2.0, 16));
    CHECK(make_state({StateFamily::Phase, cd(0.3), 0.5, 16}) == phase_state(0.3, 16));
    CHECK(make_state({StateFamily::BarutGirardello, cd(0.2, 0.1), 0.5, 16}) == bg_state(cd(0.2, 0.1), 16));
}

TEST_CASE("eigen_residual argument checks")
{
    const auto p = phase_operators<double>(8);
    CHECK_THROWS_AS(eigen_residual(p.v, phase_state(0.0, 9), 1.0, 1), DimensionError);
    CHECK_THROWS_AS(eigen_residual(p.v, phase_state(0.0, 8), 1.0, 8), RangeError);
    CHECK_THROWS_AS(eigen_residual(p.v, FockVector<double>::Zero(8), 1.0, 1), NumericError);
}
