#include "focklab/fock.hpp"

#include <cmath>
#include <stdexcept>

namespace focklab::fock {

TruncatedBasis::TruncatedBasis(int n, int D) : order_n(n), max_degree(D) {
    if (n < 1) throw std::invalid_argument("TruncatedBasis: order must be >= 1");
    if (D < 0) throw std::invalid_argument("TruncatedBasis: degree must be >= 0");
}

specialfn::HermiteIndex TruncatedBasis::index(int i) const {
    if (i < 0 || i >= size()) throw std::out_of_range("TruncatedBasis::index");
    const int stride = max_degree + 1;
    return {i % stride, i / stride};
}

int TruncatedBasis::position(int p, int q) const {
    if (p < 0 || p > max_degree || q < 0 || q >= order_n)
        throw std::out_of_range("TruncatedBasis::position");
    return q * (max_degree + 1) + p;
}

cplx basis_function(const specialfn::HermiteIndex& idx, cplx z) {
    const double lognorm =
        0.5 * (specialfn::log_factorial(idx.p) + specialfn::log_factorial(idx.q));
    return specialfn::complex_hermite(idx, z) * std::exp(-lognorm);
}

Eigen::VectorXcd basis_rows(const TruncatedBasis& basis, cplx z) {
    const int P = basis.max_degree;
    const int n = basis.order_n;
    const cplx zb = std::conj(z);
    Eigen::VectorXcd out(basis.size());
    // Row q = 0: e_{p,0} = z^p / sqrt(p!).
    out(0) = cplx(1.0, 0.0);
    for (int p = 0; p < P; ++p)
        out(p + 1) = z * out(p) / std::sqrt(static_cast<double>(p + 1));
    for (int q = 1; q < n; ++q) {
        const int row = q * (P + 1);
        const int prev = (q - 1) * (P + 1);
        const double sq = std::sqrt(static_cast<double>(q));
        for (int p = 0; p <= P; ++p) {
            cplx value = zb * out(prev + p);
            if (p > 0) value -= std::sqrt(static_cast<double>(p)) * out(prev + p - 1);
            out(row + p) = value / sq;
        }
    }
    return out;
}

cplx kernel(int n, cplx z, cplx w) {
    if (n < 1) throw std::invalid_argument("kernel: order must be >= 1");
    const double d2 = std::norm(z - w);
    return specialfn::laguerre({n - 1, 1.0}, d2) * std::exp(z * std::conj(w));
}

cplx kernel_from_basis(const TruncatedBasis& basis, cplx z, cplx w) {
    const Eigen::VectorXcd at_z = basis_rows(basis, z);
    const Eigen::VectorXcd at_w = basis_rows(basis, w);
    // sum_i e_i(z) conj(e_i(w)) accumulated in index order.
    cplx acc(0.0, 0.0);
    for (int i = 0; i < basis.size(); ++i) acc += at_z(i) * std::conj(at_w(i));
    return acc;
}

cplx normalized_kernel(int n, cplx z, cplx w) {
    return kernel(n, w, z) / std::sqrt(static_cast<double>(n) * std::exp(std::norm(z)));
}

Eigen::VectorXcd kz_coefficients(const TruncatedBasis& basis, int n, cplx z) {
    if (n < 1) throw std::invalid_argument("kz_coefficients: order must be >= 1");
    const double scale = 1.0 / std::sqrt(static_cast<double>(n) * std::exp(std::norm(z)));
    const Eigen::VectorXcd rows = basis_rows(basis, z);
    Eigen::VectorXcd coeff = Eigen::VectorXcd::Zero(basis.size());
    for (int i = 0; i < basis.size(); ++i)
        if (basis.index(i).q < n) coeff(i) = std::conj(rows(i)) * scale;
    return coeff;
}

cplx FockVector::eval(cplx z) const {
    const Eigen::VectorXcd rows = basis_rows(basis, z);
    cplx acc(0.0, 0.0);
    for (int i = 0; i < basis.size(); ++i) acc += coeff(i) * rows(i);
    return acc;
}

cplx project(int n, const quadrature::Integrand& phi, cplx z, double tol) {
    // Substituting w = z + u into int K_n(z, w) phi(w) dmu(w) folds the
    // recentred Gaussian into the kernel, leaving the bounded factor
    // L^1_{n-1}(|u|^2) e^{-conj(z) u} instead of the e^{|z|^2} swing of the
    // raw kernel.
    const auto integrand = [n, z, &phi](cplx w) {
        const cplx u = w - z;
        return specialfn::laguerre({n - 1, 1.0}, std::norm(u)) *
               std::exp(-std::conj(z) * u) * phi(w);
    };
    return quadrature::integrate_adaptive(integrand, z, tol).value;
}

ScanSeries pointwise_bound_report(const FockVector& f, const std::vector<cplx>& samples) {
    if (samples.empty())
        throw std::invalid_argument("pointwise_bound_report: no sample points");
    const double nrm = f.norm();
    if (nrm == 0.0) throw std::invalid_argument("pointwise_bound_report: zero vector");
    const double sqrt_n = std::sqrt(static_cast<double>(f.basis.order_n));
    ScanSeries series;
    series.parameter.reserve(samples.size());
    series.value.reserve(samples.size());
    for (const cplx& z : samples) {
        series.parameter.push_back(std::abs(z));
        series.value.push_back(std::abs(f.eval(z)) /
                               (sqrt_n * nrm * std::exp(std::norm(z) / 2.0)));
    }
    return series;
}

}  // namespace focklab::fock
