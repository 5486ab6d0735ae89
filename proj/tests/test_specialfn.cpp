#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "focklab/specialfn.hpp"
#include "oracles.hpp"

using focklab::cplx;
namespace sf = focklab::specialfn;

TEST_SUITE("specialfn") {

TEST_CASE("factorial is exact through 20 and matches lgamma above") {
    CHECK(sf::factorial(0) == 1.0);
    CHECK(sf::factorial(5) == 120.0);
    CHECK(sf::factorial(12) == 479001600.0);
    CHECK(sf::factorial(20) == 2432902008176640000.0);
    CHECK(sf::factorial(25) ==
          doctest::Approx(std::exp(sf::log_factorial(25))).epsilon(1e-12));
    CHECK(sf::log_factorial(0) == doctest::Approx(0.0));
    CHECK(sf::log_factorial(10) == doctest::Approx(std::log(3628800.0)).epsilon(1e-14));
}

TEST_CASE("binomial handles integer, real, and out-of-range arguments") {
    CHECK(sf::binomial(5, 2) == doctest::Approx(10.0));
    CHECK(sf::binomial(7, 0) == doctest::Approx(1.0));
    CHECK(sf::binomial(3, 5) == doctest::Approx(0.0));
    // (-1.5)(-2.5)(-3.5)/3! = -2.1875
    CHECK(sf::binomial(-1.5, 3) == doctest::Approx(-2.1875).epsilon(1e-14));
    // (4.5)(3.5)/2 = 7.875
    CHECK(sf::binomial(4.5, 2) == doctest::Approx(7.875).epsilon(1e-14));
}

TEST_CASE("generalized Laguerre against fixed reference values") {
    // Sum path (degree <= 15).
    CHECK(sf::laguerre({1, 1.0}, 2.5) == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(sf::laguerre({3, 2.0}, 1.5) == doctest::Approx(0.0625).epsilon(1e-12));
    // Recurrence path (degree > 15), non-integer and integer parameters.
    CHECK(sf::laguerre({18, 0.5}, 3.7) ==
          doctest::Approx(-1.3723737057412765).epsilon(1e-12));
    CHECK(sf::laguerre({19, 1.0}, 7.3) ==
          doctest::Approx(-9.0932924567839668).epsilon(1e-12));
    CHECK(sf::laguerre({39, 1.0}, 12.0) ==
          doctest::Approx(-90.279197728368572).epsilon(1e-12));
    // L^1_{n-1}(0) = n, the kernel diagonal law.
    for (int n = 1; n <= 8; ++n)
        CHECK(sf::laguerre({n - 1, 1.0}, 0.0) == doctest::Approx(double(n)).epsilon(1e-14));
}

TEST_CASE("Laguerre sum and recurrence paths agree near the switchover") {
    for (double x : {0.3, 2.0, 9.5}) {
        // Degree 15 (sum) and 16 (recurrence) linked by the three-term rule:
        // 16 L_16 = (31 + beta - x) L_15 - (15 + beta) L_14.
        for (double beta : {0.0, 1.0, 2.5}) {
            const double l14 = sf::laguerre({14, beta}, x);
            const double l15 = sf::laguerre({15, beta}, x);
            const double l16 = sf::laguerre({16, beta}, x);
            // The alternating explicit sum below the switchover cancels a few
            // digits at the larger x, so the agreement window is 1e-8.
            CHECK(16.0 * l16 ==
                  doctest::Approx((31.0 + beta - x) * l15 - (15.0 + beta) * l14)
                      .epsilon(1e-8));
        }
    }
}

TEST_CASE("complex Hermite values frozen from the Rodrigues formula") {
    const cplx z(0.7, 0.3);
    CHECK(std::abs(sf::complex_hermite({1, 0}, z) - z) < 1e-14);
    CHECK(std::abs(sf::complex_hermite({1, 1}, z) - cplx(-0.42, 0.0)) < 1e-14);
    CHECK(std::abs(sf::complex_hermite({2, 1}, z) - cplx(-0.994, -0.426)) < 1e-13);
    CHECK(std::abs(sf::complex_hermite({3, 2}, z) - cplx(1.99948, 0.85692)) < 1e-13);
    CHECK(std::abs(sf::complex_hermite({2, 3}, z) - cplx(1.99948, -0.85692)) < 1e-13);
    CHECK(std::abs(sf::complex_hermite({4, 4}, z) - cplx(-10.46782704, 0.0)) < 1e-11);
}

TEST_CASE("complex Hermite agrees with formal Rodrigues differentiation") {
    const std::vector<cplx> points = {{0.0, 0.0}, {1.0, 0.0}, {0.4, -1.2}, {-2.0, 0.7}};
    for (int p = 0; p <= 5; ++p)
        for (int q = 0; q <= 5; ++q) {
            const oracles::BivarPoly ref = oracles::hermite_rodrigues(p, q);
            for (const cplx& z : points) {
                const cplx got = sf::complex_hermite({p, q}, z);
                const cplx want = ref.eval(z);
                const double scale = 1.0 + std::abs(want);
                CHECK(std::abs(got - want) / scale < 1e-12);
            }
        }
}

TEST_CASE("complex Hermite conjugate symmetry") {
    const cplx z(-1.1, 0.8);
    for (int p = 0; p <= 4; ++p)
        for (int q = 0; q <= 4; ++q)
            CHECK(std::abs(sf::complex_hermite({p, q}, z) -
                           std::conj(sf::complex_hermite({q, p}, z))) < 1e-12);
}

TEST_CASE("gaussian tail integral against fixed reference values") {
    // sqrt(pi/2)
    CHECK(sf::gaussian_tail_integral(0, 0.0) ==
          doctest::Approx(1.2533141373155003).epsilon(1e-14));
    CHECK(sf::gaussian_tail_integral(0, 1.0) ==
          doctest::Approx(3.4770518117036945).epsilon(1e-13));
    CHECK(sf::gaussian_tail_integral(1, 1.0) ==
          doctest::Approx(4.4770518117036945).epsilon(1e-13));
    CHECK(sf::gaussian_tail_integral(3, 2.0) ==
          doctest::Approx(259.40346795576614).epsilon(1e-13));
    CHECK(sf::gaussian_tail_integral(5, 0.5) ==
          doctest::Approx(27.559028631112383).epsilon(1e-13));
    CHECK(sf::gaussian_tail_integral(7, 1.5) ==
          doctest::Approx(5316.624973890986).epsilon(1e-13));
    // I_9(0) = 2^4 4! = 384 exactly.
    CHECK(sf::gaussian_tail_integral(9, 0.0) == doctest::Approx(384.0).epsilon(1e-13));
}

TEST_CASE("gaussian tail recursion agrees with Simpson integration") {
    for (int N : {0, 2, 4, 6})
        for (double a : {0.0, 0.7, 3.0}) {
            const double want = oracles::gaussian_tail(N, a);
            CHECK(sf::gaussian_tail_integral(N, a) ==
                  doctest::Approx(want).epsilon(1e-9));
        }
}

TEST_CASE("adaptive tail integration matches the exact recursion") {
    for (int N : {0, 1, 5})
        for (double a : {0.2, 2.5}) {
            CHECK(sf::gaussian_tail_integral_adaptive(N, a, 1e-11) ==
                  doctest::Approx(sf::gaussian_tail_integral(N, a)).epsilon(1e-9));
        }
}

TEST_CASE("ratio scan stays bounded and reaches its known limits") {
    std::vector<double> a_grid;
    for (double a = 0.0; a <= 20.0 + 1e-9; a += 0.5) a_grid.push_back(a);

    // N = 0: ratio(a) = sqrt(pi/2) erfc(-a/sqrt 2) -> sqrt(2 pi).
    const focklab::ScanSeries s0 = sf::tail_ratio_scan(0, a_grid);
    CHECK(s0.value.back() == doctest::Approx(2.5066282746310005).epsilon(1e-10));

    // N = 9: value 384 at a = 0, tail level ~1.765 at a = 20.
    const focklab::ScanSeries s9 = sf::tail_ratio_scan(9, a_grid);
    CHECK(s9.value.front() == doctest::Approx(384.0).epsilon(1e-12));
    CHECK(s9.value.back() == doctest::Approx(1.7650656658065434).epsilon(1e-10));
    CHECK(s9.supremum() == doctest::Approx(384.0).epsilon(1e-12));
    CHECK(s9.argmax() == 0);

    for (int N = 0; N <= 9; ++N) {
        const focklab::ScanSeries s = sf::tail_ratio_scan(N, a_grid);
        CHECK(s.supremum() < 1000.0);
        for (double v : s.value) CHECK(v > 0.0);
    }
}

TEST_CASE("fit_line recovers an exact affine relation") {
    const std::vector<double> x = {1.0, 2.0, 3.0, 4.0, 5.0};
    std::vector<double> y;
    for (double xi : x) y.push_back(2.0 + 3.0 * xi);
    const focklab::GrowthFit fit = focklab::fit_line(x, y);
    CHECK(fit.slope == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(fit.intercept == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(fit.max_abs_residual < 1e-12);
    CHECK_THROWS_AS(focklab::fit_line({1.0}, {2.0}), std::invalid_argument);
}

}  // TEST_SUITE
