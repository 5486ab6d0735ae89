#include "doctest.h"

#include <cmath>
#include <complex>

#include "focklab/symbol_io.hpp"
#include "focklab/symbols.hpp"

using focklab::cplx;
namespace sym = focklab::symbols;

namespace {

const cplx kZ0(0.6, -0.8);

}  // namespace

TEST_SUITE("symbols") {

TEST_CASE("term evaluation multiplies all factors") {
    sym::SymbolTerm t;
    t.coeff = cplx(2.0, 1.0);
    t.pow_z = 2;
    t.pow_zbar = 1;
    t.exp_z = cplx(0.3, 0.0);
    const cplx z = kZ0;
    const cplx want = cplx(2.0, 1.0) * z * z * std::conj(z) * std::exp(0.3 * z);
    CHECK(std::abs(sym::eval(t, z) - want) < 1e-14);
}

TEST_CASE("addition collects like terms and drops zeros") {
    const sym::SymbolExpr a = sym::add(sym::constant(1.0), sym::monomial(1.0, 1, 0));
    const sym::SymbolExpr b = sym::add(sym::constant(-1.0), sym::monomial(2.0, 0, 1));
    const sym::SymbolExpr s = sym::add(a, b);
    REQUIRE(s.terms.size() == 2);  // the constants cancel
    CHECK(s.terms[0].pow_zbar == 1);
    CHECK(s.terms[1].pow_z == 1);
    CHECK(sym::add(sym::constant(3.0), sym::constant(-3.0)).is_zero());
}

TEST_CASE("multiplication matches pointwise products") {
    const sym::SymbolExpr a =
        sym::add(sym::exponential(1.5, cplx(0.2, 0.1)), sym::monomial(cplx(0, 1), 2, 0));
    const sym::SymbolExpr b = sym::add(sym::constant(0.5), sym::monomial(1.0, 0, 2));
    const sym::SymbolExpr prod = sym::multiply(a, b);
    CHECK(std::abs(sym::eval(prod, kZ0) - sym::eval(a, kZ0) * sym::eval(b, kZ0)) < 1e-13);

    // (1 + z)(1 - z) = 1 - z^2
    const sym::SymbolExpr one_plus = sym::add(sym::constant(1.0), sym::monomial(1.0, 1, 0));
    const sym::SymbolExpr one_minus = sym::add(sym::constant(1.0), sym::monomial(-1.0, 1, 0));
    const sym::SymbolExpr diff = sym::multiply(one_plus, one_minus);
    REQUIRE(diff.terms.size() == 2);
    CHECK(diff.terms[0].pow_z == 0);
    CHECK(diff.terms[1].pow_z == 2);
    CHECK(diff.terms[1].coeff == cplx(-1.0, 0.0));
}

TEST_CASE("conjugation swaps analytic and anti-analytic structure") {
    const sym::SymbolExpr s = sym::add(sym::exponential(cplx(1, 2), cplx(0.3, -0.4)),
                                       sym::monomial(cplx(0, 1), 3, 1));
    const sym::SymbolExpr c = sym::conjugate(s);
    CHECK(std::abs(sym::eval(c, kZ0) - std::conj(sym::eval(s, kZ0))) < 1e-13);
    CHECK(sym::conjugate(c) == s);
}

TEST_CASE("abs_squared is real and nonnegative pointwise") {
    const sym::SymbolExpr s = sym::add(sym::monomial(cplx(1, 1), 1, 0), sym::constant(0.5));
    const cplx v = sym::eval(sym::abs_squared(s), kZ0);
    CHECK(std::abs(v.imag()) < 1e-14);
    CHECK(v.real() == doctest::Approx(std::norm(sym::eval(s, kZ0))).epsilon(1e-13));
}

TEST_CASE("membership: polyanalytic order and Gaussian integrability") {
    const auto v1 = sym::membership(sym::exponential(1.0, 0.0, cplx(0.25, 0.0)));
    CHECK(v1.is_polyanalytic);
    CHECK(*v1.min_order == 1);
    CHECK(v1.square_integrable);
    CHECK(v1.gaussian_margin == doctest::Approx(0.25));

    const auto v2 = sym::membership(sym::monomial(1.0, 1, 2));
    CHECK(v2.is_polyanalytic);
    CHECK(*v2.min_order == 3);

    const auto v3 = sym::membership(sym::exponential(1.0, 0.0, 0.0, cplx(0.1, 0.0)));
    CHECK_FALSE(v3.is_polyanalytic);

    // |kappa| = 1/2 sits exactly on the boundary: not square integrable.
    const auto v4 = sym::membership(sym::exponential(1.0, 0.0, cplx(0.5, 0.0)));
    CHECK_FALSE(v4.square_integrable);
    CHECK(v4.gaussian_margin == doctest::Approx(0.0));

    const auto v5 = sym::membership(
        sym::add(sym::exponential(1.0, 0.0, cplx(0.4, 0.0)),
                 sym::exponential(1.0, 0.0, 0.0, 0.0, cplx(0.0, 0.45))));
    CHECK(v5.gaussian_margin == doctest::Approx(0.05));
}

TEST_CASE("order bookkeeping names the violated inequality") {
    CHECK_FALSE(sym::validate_orders(2, 1, 2, 1, 1).has_value());
    CHECK(*sym::validate_orders(1, 2, 1, 1, 1) == "p <= min(m, n)");
    CHECK(*sym::validate_orders(2, 2, 2, 2, 1) == "M <= min(m - p + 1, n - p + 1)");
    CHECK(*sym::validate_orders(2, 2, 2, 1, 2) == "N <= n - p + 1");
    CHECK_THROWS_AS(sym::validate_orders(0, 1, 1, 1, 1), std::invalid_argument);
}

TEST_CASE("classifier: the bounded family and its parameters") {
    const sym::SymbolExpr f = sym::exponential(2.0, cplx(0.4, 0.0));
    const sym::SymbolExpr g = sym::exponential(0.35, cplx(-0.4, 0.0));
    const sym::SarasonVerdict v = sym::classify_sarason(f, g);
    CHECK(v.bounded);
    CHECK(v.reason == sym::SarasonReason::OK);
    CHECK(std::abs(*v.q_a0 - cplx(std::log(2.0), 0.0)) < 1e-14);
    CHECK(std::abs(*v.q_a1 - cplx(0.4, 0.0)) < 1e-14);
    CHECK(std::abs(*v.c - cplx(0.7, 0.0)) < 1e-14);
}

TEST_CASE("classifier: failure reasons in enumeration order") {
    const sym::SymbolExpr pure = sym::exponential(1.0, cplx(0.5, 0.0));
    const sym::SymbolExpr anti_pure = sym::exponential(1.0, cplx(-0.5, 0.0));

    const sym::SymbolExpr poly = sym::add(sym::constant(1.0), sym::monomial(1.0, 1, 0));
    CHECK(sym::classify_sarason(poly, pure).reason ==
          sym::SarasonReason::F_NOT_PURE_EXPONENTIAL);
    CHECK(sym::classify_sarason(pure, poly).reason ==
          sym::SarasonReason::G_NOT_PURE_EXPONENTIAL);
    CHECK(sym::classify_sarason(pure, pure).reason ==
          sym::SarasonReason::PRODUCT_NOT_CONSTANT);

    const sym::SymbolExpr quad = sym::exponential(1.0, 0.0, cplx(0.25, 0.0));
    const sym::SymbolExpr anti_quad = sym::exponential(1.0, 0.0, cplx(-0.25, 0.0));
    CHECK(sym::classify_sarason(quad, anti_quad).reason ==
          sym::SarasonReason::QUADRATIC_EXPONENT);

    const sym::SymbolExpr abar = sym::exponential(1.0, 0.0, 0.0, cplx(0.4, 0.0));
    const sym::SymbolExpr anti_abar = sym::exponential(1.0, 0.0, 0.0, cplx(-0.4, 0.0));
    CHECK(sym::classify_sarason(abar, anti_abar).reason ==
          sym::SarasonReason::ANTIANALYTIC_EXPONENT);

    sym::ClassifyOptions opts;
    opts.declared_orders = sym::ClassifyOptions::Orders{1, 2, 1};
    CHECK(sym::classify_sarason(pure, anti_pure, opts).reason ==
          sym::SarasonReason::ORDER_CONSTRAINT_VIOLATED);
    CHECK(sym::classify_sarason(pure, anti_pure).bounded);

    CHECK_THROWS_AS(sym::classify_sarason(sym::SymbolExpr{}, pure), std::invalid_argument);
}

TEST_CASE("classifier: exponent matching honors the tolerance") {
    const sym::SymbolExpr f = sym::exponential(1.0, cplx(0.3, 0.0));
    const sym::SymbolExpr g_near = sym::exponential(1.0, cplx(-0.3 + 1e-7, 0.0));
    CHECK(sym::classify_sarason(f, g_near).reason ==
          sym::SarasonReason::PRODUCT_NOT_CONSTANT);
    sym::ClassifyOptions loose;
    loose.tol = 1e-6;
    CHECK(sym::classify_sarason(f, g_near, loose).bounded);
}

TEST_CASE("JSON round trip preserves symbols exactly") {
    sym::SymbolExpr s = sym::add(
        sym::exponential(cplx(1.5, -0.5), cplx(0.3, 0.1), cplx(0.0, 0.2), cplx(0.1, 0.0)),
        sym::monomial(cplx(0.0, 2.0), 2, 1));
    const nlohmann::ordered_json j = sym::serialize_symbol(s);
    CHECK(sym::parse_symbol(j) == s);
    CHECK(sym::parse_symbol_text(j.dump()) == s);
}

TEST_CASE("JSON parser diagnoses malformed symbols by field path") {
    const auto parse = [](const char* text) {
        return sym::parse_symbol(nlohmann::json::parse(text), "symbol");
    };
    // minimal valid: coeff only
    CHECK(parse(R"({"terms": [{"coeff": [1, 0]}]})") == sym::constant(1.0));

    CHECK_THROWS_WITH_AS(parse(R"({"terms": [{"pow_z": 1}]})"),
                         doctest::Contains("coeff"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse(R"({"terms": [{"coeff": [1, 0], "power": 2}]})"),
                         doctest::Contains("power"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse(R"({"terms": [{"coeff": 1}]})"),
                         doctest::Contains("coeff"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse(R"({"terms": [{"coeff": [1, 0], "pow_z": -2}]})"),
                         doctest::Contains("pow_z"), std::invalid_argument);
    CHECK_THROWS_AS(parse(R"({"no_terms": []})"), std::invalid_argument);
}

}  // TEST_SUITE
