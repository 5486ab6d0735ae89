#include "focklab/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace focklab::symbols {

namespace {

bool close(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol; }

bool same_shape(const SymbolTerm& a, const SymbolTerm& b) {
    return a.pow_z == b.pow_z && a.pow_zbar == b.pow_zbar && a.exp_z == b.exp_z &&
           a.exp_z2 == b.exp_z2 && a.exp_zbar == b.exp_zbar && a.exp_zbar2 == b.exp_zbar2;
}

// Canonical ordering so collected symbols are deterministic containers.
bool term_less(const SymbolTerm& a, const SymbolTerm& b) {
    auto key = [](const SymbolTerm& t) {
        return std::make_tuple(t.pow_z, t.pow_zbar, t.exp_z.real(), t.exp_z.imag(),
                               t.exp_z2.real(), t.exp_z2.imag(), t.exp_zbar.real(),
                               t.exp_zbar.imag(), t.exp_zbar2.real(), t.exp_zbar2.imag());
    };
    return key(a) < key(b);
}

SymbolExpr collect(std::vector<SymbolTerm> terms) {
    std::sort(terms.begin(), terms.end(), term_less);
    SymbolExpr out;
    for (const auto& t : terms) {
        if (!out.terms.empty() && same_shape(out.terms.back(), t))
            out.terms.back().coeff += t.coeff;
        else
            out.terms.push_back(t);
    }
    auto dead = std::remove_if(out.terms.begin(), out.terms.end(),
                               [](const SymbolTerm& t) { return t.coeff == cplx(0.0, 0.0); });
    out.terms.erase(dead, out.terms.end());
    return out;
}

cplx ipow(cplx z, int k) {
    cplx r(1.0, 0.0);
    for (int i = 0; i < k; ++i) r *= z;
    return r;
}

}  // namespace

SymbolExpr constant(cplx c) { return monomial(c, 0, 0); }

SymbolExpr monomial(cplx c, int pow_z, int pow_zbar) {
    if (pow_z < 0 || pow_zbar < 0)
        throw std::invalid_argument("monomial: negative power");
    SymbolTerm t;
    t.coeff = c;
    t.pow_z = pow_z;
    t.pow_zbar = pow_zbar;
    return collect({t});
}

SymbolExpr exponential(cplx c, cplx lam, cplx kap, cplx mu, cplx nu) {
    SymbolTerm t;
    t.coeff = c;
    t.exp_z = lam;
    t.exp_z2 = kap;
    t.exp_zbar = mu;
    t.exp_zbar2 = nu;
    return collect({t});
}

SymbolExpr add(const SymbolExpr& a, const SymbolExpr& b) {
    std::vector<SymbolTerm> terms = a.terms;
    terms.insert(terms.end(), b.terms.begin(), b.terms.end());
    return collect(std::move(terms));
}

cplx eval(const SymbolTerm& term, cplx z) {
    const cplx zb = std::conj(z);
    return term.coeff * ipow(z, term.pow_z) * ipow(zb, term.pow_zbar) *
           std::exp(term.exp_z * z + term.exp_z2 * z * z + term.exp_zbar * zb +
                    term.exp_zbar2 * zb * zb);
}

cplx eval(const SymbolExpr& s, cplx z) {
    cplx acc(0.0, 0.0);
    for (const auto& t : s.terms) acc += eval(t, z);
    return acc;
}

SymbolExpr conjugate(const SymbolExpr& s) {
    std::vector<SymbolTerm> terms;
    terms.reserve(s.terms.size());
    for (const auto& t : s.terms) {
        SymbolTerm c;
        c.coeff = std::conj(t.coeff);
        c.pow_z = t.pow_zbar;
        c.pow_zbar = t.pow_z;
        c.exp_z = std::conj(t.exp_zbar);
        c.exp_z2 = std::conj(t.exp_zbar2);
        c.exp_zbar = std::conj(t.exp_z);
        c.exp_zbar2 = std::conj(t.exp_z2);
        terms.push_back(c);
    }
    return collect(std::move(terms));
}

SymbolExpr multiply(const SymbolExpr& a, const SymbolExpr& b) {
    std::vector<SymbolTerm> terms;
    terms.reserve(a.terms.size() * b.terms.size());
    for (const auto& ta : a.terms)
        for (const auto& tb : b.terms) {
            SymbolTerm t;
            t.coeff = ta.coeff * tb.coeff;
            t.pow_z = ta.pow_z + tb.pow_z;
            t.pow_zbar = ta.pow_zbar + tb.pow_zbar;
            t.exp_z = ta.exp_z + tb.exp_z;
            t.exp_z2 = ta.exp_z2 + tb.exp_z2;
            t.exp_zbar = ta.exp_zbar + tb.exp_zbar;
            t.exp_zbar2 = ta.exp_zbar2 + tb.exp_zbar2;
            terms.push_back(t);
        }
    return collect(std::move(terms));
}

SymbolExpr abs_squared(const SymbolExpr& s) { return multiply(s, conjugate(s)); }

MembershipVerdict membership(const SymbolExpr& s) {
    MembershipVerdict v;
    if (s.is_zero()) {
        v.is_polyanalytic = true;
        v.min_order = 1;
        v.square_integrable = true;
        v.gaussian_margin = 0.5;
        return v;
    }
    bool polyanalytic = true;
    int max_pow_zbar = 0;
    double max_quad = 0.0;
    for (const auto& t : s.terms) {
        if (t.exp_zbar != cplx(0.0, 0.0) || t.exp_zbar2 != cplx(0.0, 0.0))
            polyanalytic = false;
        max_pow_zbar = std::max(max_pow_zbar, t.pow_zbar);
        max_quad = std::max({max_quad, std::abs(t.exp_z2), std::abs(t.exp_zbar2)});
    }
    v.is_polyanalytic = polyanalytic;
    if (polyanalytic) v.min_order = max_pow_zbar + 1;
    v.gaussian_margin = 0.5 - max_quad;
    v.square_integrable = v.gaussian_margin > 0.0;
    return v;
}

std::optional<std::string> validate_orders(int m, int p, int n, int M, int N) {
    if (m < 1 || p < 1 || n < 1 || M < 1 || N < 1)
        throw std::invalid_argument("validate_orders: orders must be >= 1");
    if (p > std::min(m, n)) return "p <= min(m, n)";
    if (M > std::min(m - p + 1, n - p + 1)) return "M <= min(m - p + 1, n - p + 1)";
    if (N > n - p + 1) return "N <= n - p + 1";
    return std::nullopt;
}

const char* to_string(SarasonReason reason) {
    switch (reason) {
        case SarasonReason::OK: return "OK";
        case SarasonReason::F_NOT_PURE_EXPONENTIAL: return "F_NOT_PURE_EXPONENTIAL";
        case SarasonReason::G_NOT_PURE_EXPONENTIAL: return "G_NOT_PURE_EXPONENTIAL";
        case SarasonReason::PRODUCT_NOT_CONSTANT: return "PRODUCT_NOT_CONSTANT";
        case SarasonReason::QUADRATIC_EXPONENT: return "QUADRATIC_EXPONENT";
        case SarasonReason::ANTIANALYTIC_EXPONENT: return "ANTIANALYTIC_EXPONENT";
        case SarasonReason::ORDER_CONSTRAINT_VIOLATED: return "ORDER_CONSTRAINT_VIOLATED";
    }
    return "?";
}

SarasonVerdict classify_sarason(const SymbolExpr& f, const SymbolExpr& g,
                                const ClassifyOptions& opts) {
    if (f.is_zero() || g.is_zero())
        throw std::invalid_argument("classify_sarason: zero symbol input");

    SarasonVerdict v;
    const auto fail = [&v](SarasonReason r) {
        v.bounded = false;
        v.reason = r;
        return v;
    };
    const cplx zero(0.0, 0.0);
    const double tol = opts.tol;

    // Pure exponential means a single term with no monomial factor; the
    // exponent content is examined by the later, more specific checks.
    const auto pure_exponential = [tol](const SymbolExpr& s) {
        return s.terms.size() == 1 && s.terms[0].pow_z == 0 && s.terms[0].pow_zbar == 0 &&
               !close(s.terms[0].coeff, cplx(0.0, 0.0), tol);
    };
    if (!pure_exponential(f)) return fail(SarasonReason::F_NOT_PURE_EXPONENTIAL);
    if (!pure_exponential(g)) return fail(SarasonReason::G_NOT_PURE_EXPONENTIAL);

    const SymbolTerm& tf = f.terms[0];
    const SymbolTerm& tg = g.terms[0];

    // f g must be a nonzero constant: every exponent cancels pairwise.
    const bool cancels = close(tf.exp_z + tg.exp_z, zero, tol) &&
                         close(tf.exp_z2 + tg.exp_z2, zero, tol) &&
                         close(tf.exp_zbar + tg.exp_zbar, zero, tol) &&
                         close(tf.exp_zbar2 + tg.exp_zbar2, zero, tol);
    if (!cancels) return fail(SarasonReason::PRODUCT_NOT_CONSTANT);

    if (!close(tf.exp_z2, zero, tol) || !close(tf.exp_zbar2, zero, tol) ||
        !close(tg.exp_z2, zero, tol) || !close(tg.exp_zbar2, zero, tol))
        return fail(SarasonReason::QUADRATIC_EXPONENT);

    if (!close(tf.exp_zbar, zero, tol) || !close(tg.exp_zbar, zero, tol))
        return fail(SarasonReason::ANTIANALYTIC_EXPONENT);

    if (opts.declared_orders) {
        // f and g are analytic at this point, so their membership orders
        // are both 1; only the (m, p, n) bookkeeping can still fail.
        const auto& o = *opts.declared_orders;
        if (validate_orders(o.m, o.p, o.n, 1, 1))
            return fail(SarasonReason::ORDER_CONSTRAINT_VIOLATED);
    }

    v.bounded = true;
    v.reason = SarasonReason::OK;
    // Canonical form f = exp(a0 + a1 z): the constant is folded into a0 via
    // the principal logarithm; c is the constant value of the product f g.
    v.q_a0 = std::log(tf.coeff);
    v.q_a1 = tf.exp_z;
    v.c = tf.coeff * tg.coeff;
    return v;
}

}  // namespace focklab::symbols
