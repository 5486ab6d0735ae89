#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "focklab/fock.hpp"
#include "focklab/symbols.hpp"
#include "focklab/types.hpp"

namespace focklab::toeplitz {

// Matrix of an operator between two truncated bases; entry (j, i) is
// <T e_i, e_j> with e_i from the domain and e_j from the codomain.
struct OperatorMatrix {
    fock::TruncatedBasis domain;
    fock::TruncatedBasis codomain;
    Eigen::MatrixXcd mat;
};

// Guard buffer added to intermediate/codomain truncations: ceil(D / 2).
int guard_buffer(int D);

// Truncated Toeplitz matrix of multiplication by phi followed by projection:
//   M[j, i] = <phi e_i, e_j> = int phi(w) e_i(w) conj(e_j(w)) dmu(w).
// All entries are assembled on one product rule sized from the polynomial
// content of the bases, then the rule is doubled until the worst entry moves
// by less than tol (1 + max |entry|).  Throws std::runtime_error naming the
// worst (row, col) when the refinement budget is exhausted.
OperatorMatrix toeplitz_matrix(const symbols::SymbolExpr& phi,
                               const fock::TruncatedBasis& domain,
                               const fock::TruncatedBasis& codomain, double tol = 1e-9);

// F after G (matrix product F.mat * G.mat); requires F.domain == G.codomain.
OperatorMatrix compose(const OperatorMatrix& F, const OperatorMatrix& G);

// Truncation of T = T^m_f T^p_gbar : F^2_n -> F^2_m at analytic degree D.
// The intermediate F^2_p truncation carries the guard buffer so the inner
// projection does not clip the composition:
//   T ~= toeplitz(f; p,D+buf -> m,D+buf) * toeplitz(conj g; n,D -> p,D+buf).
// Membership of f and g and the order bookkeeping (validate_orders with the
// symbols' minimal orders) are enforced up front.
OperatorMatrix toeplitz_product(const symbols::SymbolExpr& f, const symbols::SymbolExpr& g,
                                int m, int p, int n, int D, double tol = 1e-9);

// Largest singular value: full SVD up to size 2000, power iteration on
// M* M above (tol controls the power-iteration relative tolerance).
double operator_norm(const OperatorMatrix& M, double tol = 1e-10);
double operator_norm(const Eigen::MatrixXcd& M, double tol = 1e-10);

struct NormScan {
    std::vector<int> degrees;
    std::vector<double> norms;
    bool plateau_detected = false;
    // Least-squares slope of log(norm) vs D over the last half of the scan;
    // only reported when no plateau was detected.
    std::optional<double> growth_rate;
};

// Norms of the truncated product over an ascending degree list (>= 3
// entries).  A plateau is declared when the last two relative increments
// are both below plateau_threshold.
NormScan norm_scan(const symbols::SymbolExpr& f, const symbols::SymbolExpr& g, int m, int p,
                   int n, const std::vector<int>& D_list, double tol = 1e-9,
                   double plateau_threshold = 0.02);

// Check of (T^m_f T^p_gbar)* = T^m_g T^p_fbar on truncations: builds both
// products at degree D (guard ceil(D/2)) and returns
//   max |<T e_i, e_j> - conj(<T' e_j, e_i>)|
// over interior indices with analytic degree <= D/2, where the far-from-edge
// restriction keeps truncation effects out of the comparison.
double adjoint_residual(const symbols::SymbolExpr& f, const symbols::SymbolExpr& g, int m,
                        int p, int n, int D, double tol = 1e-9);

}  // namespace focklab::toeplitz
