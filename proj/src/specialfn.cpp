#include "focklab/specialfn.hpp"

#include <cmath>
#include <stdexcept>

namespace focklab {

GrowthFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("fit_line: need >= 2 paired samples");
    const auto n = static_cast<double>(x.size());
    double xbar = 0.0, ybar = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        xbar += x[i];
        ybar += y[i];
    }
    xbar /= n;
    ybar /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - xbar) * (x[i] - xbar);
        sxy += (x[i] - xbar) * (y[i] - ybar);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_line: degenerate abscissae");
    GrowthFit fit;
    fit.parameter = x;
    fit.value = y;
    fit.slope = sxy / sxx;
    fit.intercept = ybar - fit.slope * xbar;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = std::abs(y[i] - (fit.intercept + fit.slope * x[i]));
        if (r > fit.max_abs_residual) fit.max_abs_residual = r;
    }
    return fit;
}

}  // namespace focklab

namespace focklab::specialfn {

double factorial(int k) {
    if (k < 0) throw std::invalid_argument("factorial: negative argument");
    static const double table[21] = {1.0,
                                     1.0,
                                     2.0,
                                     6.0,
                                     24.0,
                                     120.0,
                                     720.0,
                                     5040.0,
                                     40320.0,
                                     362880.0,
                                     3628800.0,
                                     39916800.0,
                                     479001600.0,
                                     6227020800.0,
                                     87178291200.0,
                                     1307674368000.0,
                                     20922789888000.0,
                                     355687428096000.0,
                                     6402373705728000.0,
                                     121645100408832000.0,
                                     2432902008176640000.0};
    if (k <= 20) return table[k];
    return std::exp(std::lgamma(static_cast<double>(k) + 1.0));
}

double log_factorial(int k) {
    if (k < 0) throw std::invalid_argument("log_factorial: negative argument");
    return std::lgamma(static_cast<double>(k) + 1.0);
}

double binomial(double n, int k) {
    if (k < 0) throw std::invalid_argument("binomial: negative lower index");
    if (k == 0) return 1.0;
    // Rising product keeps integer cases exact for moderate sizes and is
    // well defined for real/negative n.
    double num = 1.0;
    for (int j = 0; j < k; ++j) num *= (n - static_cast<double>(j));
    return num / factorial(k);
}

namespace {

// Explicit alternating sum; accurate for small degree.
double laguerre_sum(int k, double beta, double x) {
    double acc = 0.0;
    double xpow = 1.0;  // x^j / j! accumulated incrementally
    for (int j = 0; j <= k; ++j) {
        const double term = binomial(static_cast<double>(k) + beta, k - j) * xpow;
        acc += (j % 2 == 0) ? term : -term;
        xpow *= x / static_cast<double>(j + 1);
    }
    return acc;
}

// Three-term recurrence, stable for large degree.
double laguerre_recurrence(int k, double beta, double x) {
    double lm1 = 1.0;            // L_0
    double l = 1.0 + beta - x;   // L_1
    for (int j = 1; j < k; ++j) {
        const double jd = static_cast<double>(j);
        const double lp1 =
            ((2.0 * jd + beta + 1.0 - x) * l - (jd + beta) * lm1) / (jd + 1.0);
        lm1 = l;
        l = lp1;
    }
    return l;
}

}  // namespace

double laguerre(const LaguerreParams& params, double x) {
    const int k = params.degree;
    if (k < 0) throw std::invalid_argument("laguerre: negative degree");
    if (k == 0) return 1.0;
    if (k <= 15) return laguerre_sum(k, params.beta, x);
    return laguerre_recurrence(k, params.beta, x);
}

cplx complex_hermite(const HermiteIndex& idx, cplx z) {
    if (idx.p < 0 || idx.q < 0)
        throw std::invalid_argument("complex_hermite: negative index");
    if (idx.p < idx.q) return std::conj(complex_hermite({idx.q, idx.p}, z));
    const int p = idx.p, q = idx.q;
    const double t = std::norm(z);
    cplx zpow(1.0, 0.0);
    for (int j = 0; j < p - q; ++j) zpow *= z;
    const double lag = laguerre({q, static_cast<double>(p - q)}, t);
    const double sign = (q % 2 == 0) ? 1.0 : -1.0;
    return sign * factorial(q) * zpow * lag;
}

double gaussian_tail_integral(int N, double a) {
    if (N < 0) throw std::invalid_argument("gaussian_tail_integral: N < 0");
    if (a < 0.0) throw std::invalid_argument("gaussian_tail_integral: a < 0");
    const double i0 =
        std::sqrt(M_PI / 2.0) * std::exp(a * a / 2.0) * std::erfc(-a / std::sqrt(2.0));
    if (N == 0) return i0;
    const double i1 = 1.0 + a * i0;
    if (N == 1) return i1;
    double prev = i0, cur = i1;
    for (int k = 2; k <= N; ++k) {
        const double next = static_cast<double>(k - 1) * prev + a * cur;
        prev = cur;
        cur = next;
    }
    return cur;
}

double gaussian_tail_integral_adaptive(int N, double a, double tol, int max_doublings) {
    if (N < 0 || a < 0.0)
        throw std::invalid_argument("gaussian_tail_integral_adaptive: bad arguments");
    // Integrand r^N exp(-r^2/2 + a r) is concentrated near r = a with
    // Gaussian width 1; truncate where exp(-(r-a)^2/2) is below 1e-22.
    const double hi = a + 10.0 + static_cast<double>(N);
    const auto integrand = [N, a](double r) {
        return std::pow(r, N) * std::exp(-r * r / 2.0 + a * r - a * a / 2.0);
    };
    // Trapezoid with interval doubling on [0, hi]; the a^2/2 factor is kept
    // outside the sum so intermediate values stay O(1).
    std::size_t intervals = 16;
    double h = hi / static_cast<double>(intervals);
    double sum = 0.5 * (integrand(0.0) + integrand(hi));
    for (std::size_t i = 1; i < intervals; ++i) sum += integrand(h * static_cast<double>(i));
    double value = sum * h;
    for (int level = 0; level < max_doublings; ++level) {
        double mid = 0.0;
        for (std::size_t i = 0; i < intervals; ++i)
            mid += integrand(h * (static_cast<double>(i) + 0.5));
        const double refined = 0.5 * value + 0.5 * h * mid;
        intervals *= 2;
        h *= 0.5;
        const double delta = std::abs(refined - value);
        value = refined;
        if (delta <= tol * (1.0 + std::abs(refined)))
            return value * std::exp(a * a / 2.0);
    }
    throw std::runtime_error(
        "gaussian_tail_integral_adaptive: tolerance not reached within refinement budget");
}

ScanSeries tail_ratio_scan(int N, const std::vector<double>& a_grid) {
    if (a_grid.empty()) throw std::invalid_argument("tail_ratio_scan: empty grid");
    ScanSeries series;
    series.parameter = a_grid;
    series.value.reserve(a_grid.size());
    for (double a : a_grid) {
        // I_N(a) and the majorant both carry exp(a^2/2); divide it out in
        // log space so the ratio is formed without overflow.
        const double log_ratio = std::log(gaussian_tail_integral(N, a)) - a * a / 2.0 -
                                 static_cast<double>(N) * std::log1p(a);
        series.value.push_back(std::exp(log_ratio));
    }
    return series;
}

}  // namespace focklab::specialfn
