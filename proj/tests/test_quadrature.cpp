#include "doctest.h"

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "focklab/quadrature.hpp"
#include "focklab/specialfn.hpp"
#include "oracles.hpp"

using focklab::cplx;
namespace quad = focklab::quadrature;

TEST_SUITE("quadrature") {

TEST_CASE("Gauss-Laguerre nodes and weights at small sizes") {
    // R = 2: nodes 2 -+ sqrt(2), weights (2 +- sqrt(2))/4.
    const quad::QuadratureRule r2 = quad::build_rule(2, 4);
    REQUIRE(r2.radial_node.size() == 2);
    CHECK(r2.radial_node[0] == doctest::Approx(0.58578643762690495).epsilon(1e-13));
    CHECK(r2.radial_node[1] == doctest::Approx(3.414213562373095).epsilon(1e-13));
    CHECK(r2.radial_weight[0] == doctest::Approx(0.85355339059327376).epsilon(1e-13));
    CHECK(r2.radial_weight[1] == doctest::Approx(0.14644660940672624).epsilon(1e-13));

    const quad::QuadratureRule r3 = quad::build_rule(3, 4);
    REQUIRE(r3.radial_node.size() == 3);
    CHECK(r3.radial_node[0] == doctest::Approx(0.41577455678347908).epsilon(1e-12));
    CHECK(r3.radial_node[1] == doctest::Approx(2.2942803602790417).epsilon(1e-12));
    CHECK(r3.radial_node[2] == doctest::Approx(6.2899450829374792).epsilon(1e-12));
    CHECK(r3.radial_weight[0] == doctest::Approx(0.71109300992917302).epsilon(1e-12));
    CHECK(r3.radial_weight[1] == doctest::Approx(0.27851773356924085).epsilon(1e-12));
    CHECK(r3.radial_weight[2] == doctest::Approx(0.010389256501586136).epsilon(1e-11));
}

TEST_CASE("weights are positive, ascending nodes, unit total mass") {
    for (int R : {10, 40, 160, 320}) {
        const auto rule = quad::cached_rule(R, 8);
        double total = 0.0;
        double prev = -1.0;
        for (int i = 0; i < R; ++i) {
            CHECK(rule->radial_node[i] > prev);
            prev = rule->radial_node[i];
            CHECK(rule->radial_weight[i] >= 0.0);
            total += rule->radial_weight[i];
        }
        // Summation roundoff scales with R, so the window is a loose 1e-11.
        CHECK(total == doctest::Approx(1.0).epsilon(1e-11));
    }
}

TEST_CASE("very deep rules build with underflowed tail weights set to zero") {
    // Beyond t ~ 1489 the scaled recurrence seed exp(-t/2) underflows to an
    // exact zero; those nodes must get weight 0 rather than 0/0.
    const auto rule = quad::cached_rule(400, 8);
    double total = 0.0;
    int zeros = 0;
    for (int i = 0; i < 400; ++i) {
        CHECK(std::isfinite(rule->radial_weight[i]));
        CHECK(rule->radial_weight[i] >= 0.0);
        total += rule->radial_weight[i];
        if (rule->radial_weight[i] == 0.0) ++zeros;
    }
    CHECK(rule->radial_node[399] > 1489.0);
    CHECK(zeros > 0);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-11));
}

TEST_CASE("monomial moments: int z^a conj(z)^b dmu = delta_ab a!") {
    const auto rule = quad::cached_rule(40, 64);
    for (int a = 0; a <= 12; ++a)
        for (int b = 0; b <= 12; ++b) {
            const cplx got = quad::integrate(*rule, [a, b](cplx z) {
                return std::pow(z, a) * std::pow(std::conj(z), b);
            });
            const double want = (a == b) ? focklab::specialfn::factorial(a) : 0.0;
            const double scale = focklab::specialfn::factorial(std::max(a, b));
            CHECK(std::abs(got - want) / scale < 5e-13);
        }
}

TEST_CASE("moments are rule-size independent once exact") {
    const auto small = quad::cached_rule(25, 40);
    const auto large = quad::cached_rule(80, 128);
    for (int k : {0, 3, 9}) {
        const auto f = [k](cplx z) { return std::pow(std::norm(z), k); };
        const cplx a = quad::integrate(*small, f);
        const cplx b = quad::integrate(*large, f);
        CHECK(std::abs(a - b) / (1.0 + std::abs(b)) < 1e-13);
    }
}

TEST_CASE("smooth non-polynomial integrand against the Simpson oracle") {
    // F(z) = exp(0.4 z + 0.2 conj(z)) cos(Re z)
    const auto F = [](cplx z) {
        return std::exp(0.4 * z + 0.2 * std::conj(z)) * std::cos(z.real());
    };
    const cplx want = oracles::gaussian_integral_2d(F);
    const quad::IntegrationReport rep = quad::integrate_adaptive(F, cplx(0, 0), 1e-10);
    CHECK(std::abs(rep.value - want) < 5e-8);  // oracle limits the comparison
}

TEST_CASE("shifted integration recenters the measure") {
    const cplx center(1.2, -0.4);
    const auto rule = quad::cached_rule(40, 64);
    // int |center + u|^2 dmu(u) = |center|^2 + 1
    const cplx got =
        quad::integrate_shifted(*rule, [](cplx w) { return cplx(std::norm(w), 0.0); }, center);
    CHECK(got.real() == doctest::Approx(std::norm(center) + 1.0).epsilon(1e-12));
    CHECK(std::abs(got.imag()) < 1e-12);
}

TEST_CASE("adaptive driver reports convergence level and error estimate") {
    const auto gauss = [](cplx z) { return std::exp(-std::norm(z)); };
    const quad::IntegrationReport rep = quad::integrate_adaptive(gauss, cplx(0, 0), 1e-12);
    // int e^{-|z|^2} dmu = 1/2
    CHECK(rep.value.real() == doctest::Approx(0.5).epsilon(1e-11));
    CHECK(rep.levels_used >= 0);
    CHECK(rep.estimated_error <= 1e-12 * (1.0 + std::abs(rep.value)));
}

TEST_CASE("budget exhaustion raises QuadratureError with the best report") {
    // A needle at the origin on a deliberately tiny base rule cannot reach
    // 1e-14 within one doubling.
    const auto needle = [](cplx z) { return std::exp(-40.0 * std::norm(z)); };
    try {
        quad::integrate_adaptive(needle, cplx(0, 0), 1e-14, /*max_level=*/1,
                                 /*base_radial=*/4, /*base_angular=*/8);
        FAIL("expected QuadratureError");
    } catch (const quad::QuadratureError& err) {
        CHECK(err.best.estimated_error > 0.0);
        CHECK(std::isfinite(err.best.value.real()));
    }
}

TEST_CASE("non-finite integrand values are reported, not propagated") {
    const auto rule = quad::cached_rule(8, 8);
    const auto bad = [](cplx z) {
        return z.real() > 1.0 ? cplx(std::numeric_limits<double>::quiet_NaN(), 0) : cplx(1, 0);
    };
    CHECK_THROWS_AS(quad::integrate(*rule, bad), std::runtime_error);
}

TEST_CASE("rule construction rejects degenerate sizes") {
    CHECK_THROWS_AS(quad::build_rule(0, 4), std::invalid_argument);
    CHECK_THROWS_AS(quad::build_rule(4, 0), std::invalid_argument);
}

}  // TEST_SUITE
