#pragma once

// Independent reference implementations used only by the tests.  Everything
// here is deliberately naive and shares no code with the library: Hermite
// polynomials come from formal Rodrigues differentiation, integrals from
// composite Simpson sums, and spectral norms from a dense eigensolver.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <utility>

namespace oracles {

using cplx = std::complex<double>;

// Polynomial in the two formal variables (z, zbar) with complex coefficients.
struct BivarPoly {
    std::map<std::pair<int, int>, cplx> coeff;  // (pow_z, pow_zbar) -> c

    static BivarPoly one() {
        BivarPoly p;
        p.coeff[{0, 0}] = 1.0;
        return p;
    }

    BivarPoly mul_z() const {
        BivarPoly out;
        for (const auto& [k, c] : coeff) out.coeff[{k.first + 1, k.second}] = c;
        return out;
    }

    BivarPoly mul_zbar() const {
        BivarPoly out;
        for (const auto& [k, c] : coeff) out.coeff[{k.first, k.second + 1}] = c;
        return out;
    }

    BivarPoly d_z() const {
        BivarPoly out;
        for (const auto& [k, c] : coeff)
            if (k.first > 0) out.coeff[{k.first - 1, k.second}] = c * double(k.first);
        return out;
    }

    BivarPoly d_zbar() const {
        BivarPoly out;
        for (const auto& [k, c] : coeff)
            if (k.second > 0) out.coeff[{k.first, k.second - 1}] = c * double(k.second);
        return out;
    }

    BivarPoly minus(const BivarPoly& o) const {
        BivarPoly out = *this;
        for (const auto& [k, c] : o.coeff) out.coeff[k] -= c;
        return out;
    }

    BivarPoly scaled(double s) const {
        BivarPoly out = *this;
        for (auto& [k, c] : out.coeff) c *= s;
        return out;
    }

    cplx eval(cplx z) const {
        cplx sum = 0.0;
        const cplx zb = std::conj(z);
        for (const auto& [k, c] : coeff)
            sum += c * std::pow(z, k.first) * std::pow(zb, k.second);
        return sum;
    }
};

// H_{p,q} via Rodrigues:  H_{p,q} = (-1)^{p+q} e^{|z|^2} d_zbar^p d_z^q e^{-|z|^2},
// with z and zbar treated as independent formal variables.  Writing
// G = e^{|z|^2} (d^... e^{-|z|^2}) as a polynomial, each derivative acts as
//   G -> d_z G - zbar G      (one more d_z)
//   G -> d_zbar G - z G      (one more d_zbar)
inline BivarPoly hermite_rodrigues(int p, int q) {
    BivarPoly g = BivarPoly::one();
    for (int i = 0; i < q; ++i) g = g.d_z().minus(g.mul_zbar());
    for (int i = 0; i < p; ++i) g = g.d_zbar().minus(g.mul_z());
    return ((p + q) % 2 == 0) ? g : g.scaled(-1.0);
}

// Composite Simpson on [a, b] with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
    if (n % 2) ++n;
    const double h = (b - a) / n;
    double sum = f(a) + f(b);
    for (int i = 1; i < n; ++i) sum += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return sum * h / 3.0;
}

// I_N(a) = int_0^inf r^N exp(-r^2/2 + a r) dr by Simpson on [0, a + 60].
inline double gaussian_tail(int N, double a, int panels = 400000) {
    return simpson(
        [N, a](double r) { return std::pow(r, N) * std::exp(-r * r / 2 + a * r); }, 0.0,
        a + 60.0, panels);
}

// int F dmu, dmu = (1/pi) e^{-|z|^2} dlambda, by a tensor Simpson rule over
// the square [-L, L]^2.  Good to ~1e-9 for smooth integrands of moderate
// growth; slow, used only on a handful of points.
inline cplx gaussian_integral_2d(const std::function<cplx(cplx)>& F, double L = 7.0,
                                 int n = 700) {
    if (n % 2) ++n;
    const double h = 2.0 * L / n;
    auto w1 = [n](int i) { return (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0); };
    cplx sum = 0.0;
    for (int iy = 0; iy <= n; ++iy) {
        const double y = -L + iy * h;
        cplx row = 0.0;
        for (int ix = 0; ix <= n; ++ix) {
            const double x = -L + ix * h;
            row += w1(ix) * F(cplx(x, y)) * std::exp(-x * x - y * y);
        }
        sum += w1(iy) * row;
    }
    return sum * (h * h / 9.0) / M_PI;
}

// Largest singular value through the dense self-adjoint eigensolver on M* M.
inline double spectral_norm(const Eigen::MatrixXcd& M) {
    const Eigen::MatrixXcd gram = M.adjoint() * M;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram);
    return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

}  // namespace oracles
