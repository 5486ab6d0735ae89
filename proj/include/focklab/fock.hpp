#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "focklab/quadrature.hpp"
#include "focklab/specialfn.hpp"
#include "focklab/types.hpp"

namespace focklab::fock {

// Finite slice of the polyanalytic Fock space F^2_n (alpha = 1): the span of
// the orthonormal complex-Hermite states e_{p,q} = H_{p,q} / sqrt(p! q!)
// with 0 <= q < order_n and 0 <= p <= max_degree.  Indices are laid out
// q-major: i = q (max_degree + 1) + p.
struct TruncatedBasis {
    int order_n = 1;
    int max_degree = 0;

    TruncatedBasis() = default;
    TruncatedBasis(int n, int D);

    int size() const { return order_n * (max_degree + 1); }
    specialfn::HermiteIndex index(int i) const;
    int position(int p, int q) const;  // inverse of index()

    bool operator==(const TruncatedBasis& other) const = default;
};

// e_{p,q}(z), single evaluation through the Laguerre closed form.
cplx basis_function(const specialfn::HermiteIndex& idx, cplx z);

// All basis values at z in index order, via the normalized recurrences
//   e_{p+1,q} = (z e_{p,q} - sqrt(q) e_{p,q-1}) / sqrt(p+1)
//   e_{p,q+1} = (zbar e_{p,q} - sqrt(p) e_{p-1,q}) / sqrt(q+1)
// which keep every intermediate on the scale of the final values.
Eigen::VectorXcd basis_rows(const TruncatedBasis& basis, cplx z);

// Reproducing kernel of F^2_n:
//   K_n(z, w) = L^1_{n-1}(|z - w|^2) exp(z wbar),   K_n(z, z) = n exp(|z|^2).
cplx kernel(int n, cplx z, cplx w);

// Truncated kernel sum_i e_i(z) conj(e_i(w)); converges to kernel() as the
// degree cut grows.
cplx kernel_from_basis(const TruncatedBasis& basis, cplx z, cplx w);

// Normalized reproducing state evaluated at w:
//   k_z(w) = K_n(w, z) / sqrt(K_n(z, z)).
cplx normalized_kernel(int n, cplx z, cplx w);

// Expansion coefficients of k_z over `basis`: conj(e_i(z)) / sqrt(n e^{|z|^2})
// on rows with q < n, zero on rows the state does not reach (q >= n).
Eigen::VectorXcd kz_coefficients(const TruncatedBasis& basis, int n, cplx z);

// Finite expansion f = sum_i coeff_i e_i in a truncated basis.
struct FockVector {
    TruncatedBasis basis;
    Eigen::VectorXcd coeff;

    double norm() const { return coeff.norm(); }  // Parseval
    cplx eval(cplx z) const;
};

// Projection onto F^2_n through the kernel:
//   (P_n phi)(z) = int K_n(z, w) phi(w) dmu(w),
// evaluated by the adaptive rule recentered at z.
cplx project(int n, const quadrature::Integrand& phi, cplx z, double tol = 1e-10);

// Ratios |f(z)| / (sqrt(n) ||f|| e^{|z|^2 / 2}) over sample points; every
// ratio is <= 1 for members of F^2_n.  parameter holds |z| per sample.
ScanSeries pointwise_bound_report(const FockVector& f, const std::vector<cplx>& samples);

}  // namespace focklab::fock
