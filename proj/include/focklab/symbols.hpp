#pragma once

#include <optional>
#include <string>
#include <vector>

#include "focklab/types.hpp"

namespace focklab::symbols {

// One term  c * z^a * zbar^b * exp(lam z + kap z^2 + mu zbar + nu zbar^2).
struct SymbolTerm {
    cplx coeff{1.0, 0.0};
    int pow_z = 0;
    int pow_zbar = 0;
    cplx exp_z{0.0, 0.0};      // lam
    cplx exp_z2{0.0, 0.0};     // kap
    cplx exp_zbar{0.0, 0.0};   // mu
    cplx exp_zbar2{0.0, 0.0};  // nu

    bool operator==(const SymbolTerm& other) const = default;
};

// Finite sum of terms, kept unique on (pow_z, pow_zbar, exp_z, exp_z2,
// exp_zbar, exp_zbar2); terms with zero coefficient are dropped.
struct SymbolExpr {
    std::vector<SymbolTerm> terms;

    bool is_zero() const { return terms.empty(); }

    bool operator==(const SymbolExpr& other) const = default;
};

// Convenience constructors.
SymbolExpr constant(cplx c);
SymbolExpr monomial(cplx c, int pow_z, int pow_zbar);
// c * exp(lam z + kap z^2 + mu zbar + nu zbar^2)
SymbolExpr exponential(cplx c, cplx lam, cplx kap = {}, cplx mu = {}, cplx nu = {});
SymbolExpr add(const SymbolExpr& a, const SymbolExpr& b);

cplx eval(const SymbolTerm& term, cplx z);
cplx eval(const SymbolExpr& s, cplx z);

// Pointwise complex conjugate as a symbol: swaps the analytic and
// anti-analytic structure and conjugates every coefficient.
SymbolExpr conjugate(const SymbolExpr& s);

// Pointwise product; like terms are collected and zero terms dropped.
SymbolExpr multiply(const SymbolExpr& a, const SymbolExpr& b);

// |s|^2 = s * conj(s) as a symbol.
SymbolExpr abs_squared(const SymbolExpr& s);

struct MembershipVerdict {
    bool is_polyanalytic = false;       // every term free of zbar exponentials
    std::optional<int> min_order;       // 1 + max pow_zbar when polyanalytic
    bool square_integrable = false;     // |kap| < 1/2 and |nu| < 1/2 termwise
    double gaussian_margin = 0.0;       // 1/2 - max(|kap|, |nu|) over terms
};

// Structural membership test against the Gaussian L^2 space and the
// polyanalytic scale: s is polyanalytic of order n iff no term carries a
// zbar exponential and every pow_zbar <= n - 1.
MembershipVerdict membership(const SymbolExpr& s);

// Order bookkeeping for the product T^m_f T^p_gbar : F^2_n -> F^2_m with
// f of order M and g of order N.  Checks, in this sequence:
//   p <= min(m, n)
//   M <= min(m - p + 1, n - p + 1)
//   N <= n - p + 1
// Returns std::nullopt when all hold, else the first violated inequality
// spelled out by name.
std::optional<std::string> validate_orders(int m, int p, int n, int M, int N);

enum class SarasonReason {
    OK,
    F_NOT_PURE_EXPONENTIAL,
    G_NOT_PURE_EXPONENTIAL,
    PRODUCT_NOT_CONSTANT,
    QUADRATIC_EXPONENT,
    ANTIANALYTIC_EXPONENT,
    ORDER_CONSTRAINT_VIOLATED,
};

const char* to_string(SarasonReason reason);

struct SarasonVerdict {
    bool bounded = false;
    SarasonReason reason = SarasonReason::OK;
    // Populated when bounded: f = exp(a0 + a1 z), g = c exp(-a0 - a1 z).
    std::optional<cplx> q_a0;
    std::optional<cplx> q_a1;
    std::optional<cplx> c;
};

struct ClassifyOptions {
    double tol = 0.0;  // tolerance for exponent matching (0 = exact)
    struct Orders {
        int m = 1, p = 1, n = 1;
    };
    std::optional<Orders> declared_orders;
};

// Decide whether T^m_f T^p_gbar is bounded.  The bounded family is exactly
//   f = exp(a0 + a1 z),  g = c exp(-a1 z - a0)  (f g constant),
// with no quadratic or anti-analytic exponent; everything else is unbounded
// and the verdict carries the first failing reason in enumeration order.
// When declared_orders is present the (m, p, n) bookkeeping is validated as
// the final check.  Throws std::invalid_argument on a zero symbol.
SarasonVerdict classify_sarason(const SymbolExpr& f, const SymbolExpr& g,
                                const ClassifyOptions& opts = {});

}  // namespace focklab::symbols
