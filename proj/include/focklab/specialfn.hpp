#pragma once

#include <vector>

#include "focklab/types.hpp"

namespace focklab::specialfn {

// Exact factorial as a double for k <= 20, exp(lgamma) above.
double factorial(int k);

// log(k!) via lgamma; k >= 0.
double log_factorial(int k);

// Binomial coefficient C(n, k) for real n and integer k >= 0:
//   C(n, k) = n (n-1) ... (n-k+1) / k!
// Handles the negative/real upper argument needed by generalized Laguerre
// expansions; returns 0 when n is a non-negative integer with k > n.
double binomial(double n, int k);

// Generalized Laguerre polynomial L^beta_k.
struct LaguerreParams {
    int degree = 0;     // k >= 0
    double beta = 0.0;  // real parameter
};

// Evaluate L^beta_k(x).  Uses the explicit sum
//   L^beta_k(x) = sum_{j=0}^{k} (-1)^j C(k+beta, k-j) x^j / j!
// for small degrees and the three-term recurrence
//   (k+1) L^beta_{k+1} = (2k+beta+1-x) L^beta_k - (k+beta) L^beta_{k-1}
// above degree 15, where the alternating sum loses accuracy for large x.
double laguerre(const LaguerreParams& params, double x);

// Complex Hermite polynomial H_{p,q}(z, conj z) with the normalization
//   H_{p,q}(z, zbar) = (-1)^q q! z^{p-q} L^{p-q}_q(|z|^2)   for p >= q,
//   H_{p,q} = conj(H_{q,p})                                 for p < q.
// Orthogonality: <H_{p,q}, H_{p',q'}>_{L^2(mu)} = p! q! delta delta.
struct HermiteIndex {
    int p = 0;
    int q = 0;
};

cplx complex_hermite(const HermiteIndex& idx, cplx z);

// Gaussian tail integral I_N(a) = int_0^inf r^N exp(-r^2/2 + a r) dr,
// N >= 0, a >= 0.  Evaluated by the exact recursion
//   I_N(a) = (N-1) I_{N-2}(a) + a I_{N-1}(a),  N >= 2,
// seeded with
//   I_0(a) = sqrt(pi/2) exp(a^2/2) erfc(-a/sqrt 2),
//   I_1(a) = 1 + a I_0(a).
double gaussian_tail_integral(int N, double a);

// Same integral by direct adaptive quadrature on the shifted variable
// r = a + s (trapezoid with interval doubling).  Kept as an independent
// slow path; throws std::runtime_error if |delta| > tol*(1+|value|) still
// holds after max_doublings refinements.
double gaussian_tail_integral_adaptive(int N, double a, double tol = 1e-10,
                                       int max_doublings = 22);

// Ratio scan r(a) = I_N(a) / ((1+a)^N exp(a^2/2)) over a grid of a >= 0.
// The ratio stays bounded in a for each fixed N; the reported supremum is
// an empirical constant for the bound I_N(a) <= A(N) (1+a)^N exp(a^2/2).
ScanSeries tail_ratio_scan(int N, const std::vector<double>& a_grid);

}  // namespace focklab::specialfn
