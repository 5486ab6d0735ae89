#pragma once

#include <vector>

#include "focklab/quadrature.hpp"
#include "focklab/symbols.hpp"
#include "focklab/toeplitz.hpp"
#include "focklab/types.hpp"

namespace focklab::berezin {

// Values of a transform sampled over a point set in the plane.
struct BerezinField {
    std::vector<cplx> points;
    std::vector<cplx> values;

    double max_abs() const;
};

// Berezin transform of a function symbol against F^2_n, in the centered
// reduction obtained from |k_z|^2 dmu:
//   B_n phi(z) = (1/n) int phi(z + u) L^1_{n-1}(|u|^2)^2 dmu(u).
cplx berezin_function(const symbols::SymbolExpr& phi, int n, cplx z, double tol = 1e-9);
cplx berezin_function(const quadrature::Integrand& phi, int n, cplx z, double tol = 1e-9);

// Berezin transform of a truncated operator: <M k_z, k_z> with k_z expanded
// over the domain and codomain bases (order n on both sides).
cplx berezin_operator(const toeplitz::OperatorMatrix& M, int n, cplx z);

// Pointwise defect of the product identity B_n(T^m_f T^p_gbar) = (p/n) f gbar
// on a grid; values hold B_n T(z) - (p/n) f(z) conj(g(z)).
BerezinField berezin_identity_field(const symbols::SymbolExpr& f,
                                    const symbols::SymbolExpr& g, int m, int p, int n, int D,
                                    const std::vector<cplx>& grid, double tol = 1e-9);
double berezin_identity_residual(const symbols::SymbolExpr& f, const symbols::SymbolExpr& g,
                                 int m, int p, int n, int D, const std::vector<cplx>& grid,
                                 double tol = 1e-9);

// Sarason-type field B_p(|f|^2)(z) * B_p(|g|^2)(z); real-valued.
BerezinField sarason_field(const symbols::SymbolExpr& f, const symbols::SymbolExpr& g, int p,
                           const std::vector<cplx>& grid, double tol = 1e-9);

// Two-point transform S(z, w) = <T k^n_z, k^n_w> of T = T^m_f T^p_gbar in
// closed form:
//   S(z, w) = sqrt(p/n) f(w) conj(g(z)) K_p(w, z) / sqrt(K_p(z,z) K_n(w,w)).
cplx s_map(const symbols::SymbolExpr& f, const symbols::SymbolExpr& g, int m, int p, int n,
           cplx z, cplx w);

// Sample log |S(r, r + conj(a2))| over r_values (>= 4 points) and fit a line
// over the upper half of the range; for f = e^{a0 + a1 z + a2 z^2} and
// g = c e^{-...} the slope recovers 2 |a2|^2.  Throws on a degenerate fit
// (vanishing |S|).
GrowthFit s_growth_fit(const symbols::SymbolExpr& f, const symbols::SymbolExpr& g, int m,
                       int p, int n, cplx a2, const std::vector<double>& r_values);

// Pointwise majorant defect for h of order <= n:
//   slack(z) = ((m + n - 1) / m) B_m(|h|^2)(z) - |h(z)|^2  >= 0.
struct MajorationReport {
    BerezinField slack;
    double min_slack = 0.0;
};
MajorationReport majoration_slack(const symbols::SymbolExpr& h, int m, int n,
                                  const std::vector<cplx>& grid, double tol = 1e-9);

// Schur test field
//   H_c(z) = (1/pi) int |K_p(z, w)| e^{Re(c (z - w))} e^{-(|z|^2+|w|^2)/2} dlambda(w),
// independent of z in exact arithmetic, and its closed-form majorant
//   H_c <= sum_{j=0}^{p-1} (2/j!) C(p, p-1-j) I_{2j+1}(|c|).
// Accuracy: roundoff-level for p = 1; a few parts in 1e3 for p >= 2, where
// the |L^1_{p-1}| kinks limit the fixed rule pair to algebraic convergence.
BerezinField schur_field(cplx c, int p, const std::vector<cplx>& grid, double tol = 1e-9);
double schur_bound_estimate(cplx c, int p);

}  // namespace focklab::berezin
