#include "focklab/berezin.hpp"

#include <cmath>
#include <stdexcept>

#include "focklab/fock.hpp"
#include "focklab/parallel.hpp"
#include "focklab/specialfn.hpp"

namespace focklab::berezin {

double BerezinField::max_abs() const {
    double worst = 0.0;
    for (const cplx& v : values) worst = std::max(worst, std::abs(v));
    return worst;
}

namespace {

// Evaluate a complex-valued map over a grid with slot-per-point writes; the
// worker count cannot change the stored values.
BerezinField map_grid(const std::vector<cplx>& grid,
                      const std::function<cplx(cplx)>& fn) {
    BerezinField field;
    field.points = grid;
    field.values.resize(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) { field.values[i] = fn(grid[i]); });
    return field;
}

}  // namespace

cplx berezin_function(const quadrature::Integrand& phi, int n, cplx z, double tol) {
    if (n < 1) throw std::invalid_argument("berezin_function: order must be >= 1");
    const auto integrand = [&phi, n, z](cplx w) {
        const double lag = specialfn::laguerre({n - 1, 1.0}, std::norm(w - z));
        return phi(w) * (lag * lag);
    };
    return quadrature::integrate_adaptive(integrand, z, tol).value /
           static_cast<double>(n);
}

cplx berezin_function(const symbols::SymbolExpr& phi, int n, cplx z, double tol) {
    return berezin_function([&phi](cplx w) { return symbols::eval(phi, w); }, n, z, tol);
}

cplx berezin_operator(const toeplitz::OperatorMatrix& M, int n, cplx z) {
    if (M.domain.order_n != n)
        throw std::invalid_argument("berezin_operator: domain is not a truncation of F^2_n");
    const Eigen::VectorXcd v = fock::kz_coefficients(M.domain, n, z);
    const Eigen::VectorXcd d = fock::kz_coefficients(M.codomain, n, z);
    return (d.adjoint() * (M.mat * v))(0, 0);
}

BerezinField berezin_identity_field(const symbols::SymbolExpr& f,
                                    const symbols::SymbolExpr& g, int m, int p, int n, int D,
                                    const std::vector<cplx>& grid, double tol) {
    const toeplitz::OperatorMatrix T = toeplitz::toeplitz_product(f, g, m, p, n, D, tol);
    const double ratio = static_cast<double>(p) / static_cast<double>(n);
    return map_grid(grid, [&](cplx z) {
        const cplx predicted = ratio * symbols::eval(f, z) * std::conj(symbols::eval(g, z));
        return berezin_operator(T, n, z) - predicted;
    });
}

double berezin_identity_residual(const symbols::SymbolExpr& f, const symbols::SymbolExpr& g,
                                 int m, int p, int n, int D, const std::vector<cplx>& grid,
                                 double tol) {
    return berezin_identity_field(f, g, m, p, n, D, grid, tol).max_abs();
}

BerezinField sarason_field(const symbols::SymbolExpr& f, const symbols::SymbolExpr& g, int p,
                           const std::vector<cplx>& grid, double tol) {
    const symbols::SymbolExpr f2 = symbols::abs_squared(f);
    const symbols::SymbolExpr g2 = symbols::abs_squared(g);
    return map_grid(grid, [&](cplx z) {
        return berezin_function(f2, p, z, tol) * berezin_function(g2, p, z, tol);
    });
}

cplx s_map(const symbols::SymbolExpr& f, const symbols::SymbolExpr& g, int m, int p, int n,
           cplx z, cplx w) {
    if (auto violated = symbols::validate_orders(
            m, p, n, symbols::membership(f).min_order.value_or(n + 1),
            symbols::membership(g).min_order.value_or(n + 1)))
        throw std::invalid_argument("s_map: order constraint violated: " + *violated);
    const double lag = specialfn::laguerre({p - 1, 1.0}, std::norm(z - w));
    // K_p(w, z) / sqrt(K_p(z,z) K_n(w,w)) with the diagonal Gaussians folded
    // into one exponent: exp(w zbar - (|z|^2 + |w|^2)/2) has modulus
    // exp(-|z - w|^2 / 2), so nothing here can overflow.
    const cplx expo = w * std::conj(z) - 0.5 * (std::norm(z) + std::norm(w));
    const double scale =
        std::sqrt(static_cast<double>(p) / static_cast<double>(n)) /
        std::sqrt(static_cast<double>(p) * static_cast<double>(n));
    return scale * symbols::eval(f, w) * std::conj(symbols::eval(g, z)) * lag *
           std::exp(expo);
}

GrowthFit s_growth_fit(const symbols::SymbolExpr& f, const symbols::SymbolExpr& g, int m,
                       int p, int n, cplx a2, const std::vector<double>& r_values) {
    if (r_values.size() < 4)
        throw std::invalid_argument("s_growth_fit: need at least 4 samples");
    const cplx offset = std::conj(a2);
    std::vector<double> upper_r, upper_log;
    std::vector<double> all_log(r_values.size());
    for (std::size_t i = 0; i < r_values.size(); ++i) {
        const cplx z(r_values[i], 0.0);
        const double mag = std::abs(s_map(f, g, m, p, n, z, z + offset));
        if (!(mag > 0.0) || !std::isfinite(mag))
            throw std::runtime_error("s_growth_fit: degenerate fit, |S| vanished");
        all_log[i] = std::log(mag);
    }
    for (std::size_t i = r_values.size() / 2; i < r_values.size(); ++i) {
        upper_r.push_back(r_values[i]);
        upper_log.push_back(all_log[i]);
    }
    return fit_line(upper_r, upper_log);
}

MajorationReport majoration_slack(const symbols::SymbolExpr& h, int m, int n,
                                  const std::vector<cplx>& grid, double tol) {
    if (grid.empty()) throw std::invalid_argument("majoration_slack: empty grid");
    const auto verdict = symbols::membership(h);
    if (!verdict.is_polyanalytic || *verdict.min_order > n)
        throw std::invalid_argument("majoration_slack: h is not of order <= n");
    const symbols::SymbolExpr h2 = symbols::abs_squared(h);
    const double factor = static_cast<double>(m + n - 1) / static_cast<double>(m);
    MajorationReport report;
    report.slack = map_grid(grid, [&](cplx z) {
        const double bz = berezin_function(h2, m, z, tol).real();
        return cplx(factor * bz - std::norm(symbols::eval(h, z)), 0.0);
    });
    report.min_slack = report.slack.values.front().real();
    for (const cplx& v : report.slack.values)
        report.min_slack = std::min(report.min_slack, v.real());
    return report;
}

BerezinField schur_field(cplx c, int p, const std::vector<cplx>& grid, double tol) {
    if (p < 1) throw std::invalid_argument("schur_field: order must be >= 1");
    // |L^1_{p-1}| has kinks at the Laguerre roots for p >= 2, so the rule
    // converges only algebraically there; a fixed refinement pair with a
    // relaxed acceptance gate replaces the tight adaptive driver (which the
    // kink would starve).  For p = 1 the integrand is smooth and the coarse
    // rule is already at roundoff.
    const auto coarse = quadrature::cached_rule(160, 128);
    const auto fine = quadrature::cached_rule(320, 256);
    const double gate = std::max(tol, 5e-2);
    return map_grid(grid, [&](cplx z) {
        // (1/pi) int |K_p(z,w)| e^{Re(c(z-w))} e^{-(|z|^2+|w|^2)/2} dlambda(w)
        // as an integral against dmu centered at z; all exponents are
        // combined before exponentiation so large |u| cannot overflow.
        const auto integrand = [c, p, z](cplx w) {
            const double t = std::norm(w - z);
            const double lag = std::abs(specialfn::laguerre({p - 1, 1.0}, t));
            const double expo = (c * (z - w)).real() + (z * std::conj(w)).real() -
                                0.5 * (std::norm(z) + std::norm(w)) + t;
            return cplx(lag * std::exp(expo), 0.0);
        };
        const cplx v0 = quadrature::integrate_shifted(*coarse, integrand, z);
        const cplx v1 = quadrature::integrate_shifted(*fine, integrand, z);
        if (std::abs(v1 - v0) > gate * (1.0 + std::abs(v1)))
            throw std::runtime_error("schur_field: rule pair did not converge");
        return v1;
    });
}

double schur_bound_estimate(cplx c, int p) {
    if (p < 1) throw std::invalid_argument("schur_bound_estimate: order must be >= 1");
    const double a = std::abs(c);
    double bound = 0.0;
    for (int j = 0; j < p; ++j)
        bound += 2.0 / specialfn::factorial(j) *
                 specialfn::binomial(static_cast<double>(p), p - 1 - j) *
                 specialfn::gaussian_tail_integral(2 * j + 1, a);
    return bound;
}

}  // namespace focklab::berezin
