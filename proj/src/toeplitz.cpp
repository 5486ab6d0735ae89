#include "focklab/toeplitz.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "focklab/parallel.hpp"
#include "focklab/quadrature.hpp"

namespace focklab::toeplitz {

namespace {

// Basis values at one point written straight into a contiguous column.
void basis_column(const fock::TruncatedBasis& basis, cplx z,
                  Eigen::Ref<Eigen::VectorXcd> out) {
    const int P = basis.max_degree;
    const cplx zb = std::conj(z);
    out(0) = cplx(1.0, 0.0);
    for (int p = 0; p < P; ++p)
        out(p + 1) = z * out(p) / std::sqrt(static_cast<double>(p + 1));
    for (int q = 1; q < basis.order_n; ++q) {
        const int row = q * (P + 1);
        const int prev = (q - 1) * (P + 1);
        const double sq = std::sqrt(static_cast<double>(q));
        for (int p = 0; p <= P; ++p) {
            cplx value = zb * out(prev + p);
            if (p > 0) value -= std::sqrt(static_cast<double>(p)) * out(prev + p - 1);
            out(row + p) = value / sq;
        }
    }
}

int symbol_degree(const symbols::SymbolExpr& s) {
    int deg = 0;
    for (const auto& t : s.terms) deg = std::max(deg, t.pow_z + t.pow_zbar);
    return deg;
}

// One full assembly of <phi e_i, e_j> on a fixed rule.  Radial nodes are
// processed in chunks of fixed width; chunk partial sums are reduced in
// ascending order, so the floating-point result is independent of the
// worker count.
Eigen::MatrixXcd assemble(const symbols::SymbolExpr& phi, const fock::TruncatedBasis& dom,
                          const fock::TruncatedBasis& cod,
                          const quadrature::QuadratureRule& rule) {
    constexpr int kChunk = 8;
    const int R = rule.radial_points;
    const int A = rule.angular_count;
    const int chunks = (R + kChunk - 1) / kChunk;
    const double inv_A = 1.0 / static_cast<double>(A);

    std::vector<Eigen::MatrixXcd> partial(chunks);
    parallel_for(chunks, [&](std::size_t c) {
        Eigen::MatrixXcd local = Eigen::MatrixXcd::Zero(cod.size(), dom.size());
        Eigen::MatrixXcd C_dom(dom.size(), A), C_cod(cod.size(), A), D_dom(dom.size(), A);
        Eigen::VectorXcd coeff(A);
        const int lo = static_cast<int>(c) * kChunk;
        const int hi = std::min(R, lo + kChunk);
        for (int i = lo; i < hi; ++i) {
            const double w = rule.radial_weight[i];
            if (w == 0.0) continue;
            const double r = std::sqrt(rule.radial_node[i]);
            for (int j = 0; j < A; ++j) {
                const cplx z = r * rule.angular_phase[j];
                const cplx value = symbols::eval(phi, z);
                if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
                    std::ostringstream msg;
                    msg << "toeplitz_matrix: non-finite symbol value at node (t="
                        << rule.radial_node[i] << ", j=" << j << ")";
                    throw std::runtime_error(msg.str());
                }
                coeff(j) = (w * inv_A) * value;
                basis_column(dom, z, C_dom.col(j));
                basis_column(cod, z, C_cod.col(j));
            }
            D_dom.noalias() = C_dom * coeff.asDiagonal();
            local.noalias() += C_cod.conjugate() * D_dom.transpose();
        }
        partial[c] = std::move(local);
    });

    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(cod.size(), dom.size());
    for (int c = 0; c < chunks; ++c) out += partial[c];
    return out;
}

}  // namespace

int guard_buffer(int D) { return (D + 1) / 2; }

OperatorMatrix toeplitz_matrix(const symbols::SymbolExpr& phi,
                               const fock::TruncatedBasis& domain,
                               const fock::TruncatedBasis& codomain, double tol) {
    if (tol <= 0.0) throw std::invalid_argument("toeplitz_matrix: tol must be > 0");
    OperatorMatrix M;
    M.domain = domain;
    M.codomain = codomain;
    if (phi.is_zero()) {
        M.mat = Eigen::MatrixXcd::Zero(codomain.size(), domain.size());
        return M;
    }

    // Total polynomial degree of e_i conj(e_j) phi fixes the rule size for
    // near-exact integration; the doubling loop then certifies it.
    const int total_degree = domain.max_degree + domain.order_n - 1 + codomain.max_degree +
                             codomain.order_n - 1 + symbol_degree(phi);
    const int base_radial = std::max(40, total_degree / 2 + 8);
    int base_angular = std::max(64, total_degree + 16);
    if (base_angular % 2 == 1) ++base_angular;

    constexpr int kMaxLevels = 4;
    Eigen::MatrixXcd prev;
    for (int level = 0; level <= kMaxLevels; ++level) {
        const auto rule = quadrature::cached_rule(base_radial << level, base_angular << level);
        Eigen::MatrixXcd cur = assemble(phi, domain, codomain, *rule);
        if (level > 0) {
            const double diff = (cur - prev).cwiseAbs().maxCoeff();
            const double scale = 1.0 + cur.cwiseAbs().maxCoeff();
            if (diff <= tol * scale) {
                M.mat = std::move(cur);
                return M;
            }
        }
        prev = std::move(cur);
    }
    Eigen::Index worst_row = 0, worst_col = 0;
    prev.cwiseAbs().maxCoeff(&worst_row, &worst_col);
    std::ostringstream msg;
    msg << "toeplitz_matrix: quadrature did not converge at entry (" << worst_row << ", "
        << worst_col << ")";
    throw std::runtime_error(msg.str());
}

OperatorMatrix compose(const OperatorMatrix& F, const OperatorMatrix& G) {
    if (!(F.domain == G.codomain))
        throw std::invalid_argument("compose: F.domain must equal G.codomain");
    OperatorMatrix R;
    R.domain = G.domain;
    R.codomain = F.codomain;
    R.mat = F.mat * G.mat;
    return R;
}

OperatorMatrix toeplitz_product(const symbols::SymbolExpr& f, const symbols::SymbolExpr& g,
                                int m, int p, int n, int D, double tol) {
    const auto mf = symbols::membership(f);
    const auto mg = symbols::membership(g);
    if (!mf.is_polyanalytic)
        throw std::invalid_argument("toeplitz_product: f is not polyanalytic");
    if (!mg.is_polyanalytic)
        throw std::invalid_argument("toeplitz_product: g is not polyanalytic");
    if (!mf.square_integrable || !mg.square_integrable)
        throw std::invalid_argument("toeplitz_product: symbol not square-integrable");
    if (auto violated = symbols::validate_orders(m, p, n, *mf.min_order, *mg.min_order))
        throw std::invalid_argument("toeplitz_product: order constraint violated: " +
                                    *violated);

    const int Dg = D + guard_buffer(D);
    const fock::TruncatedBasis dom(n, D), mid(p, Dg), cod(m, Dg);
    const OperatorMatrix Tf = toeplitz_matrix(f, mid, cod, tol);
    const OperatorMatrix Tg = toeplitz_matrix(symbols::conjugate(g), dom, mid, tol);
    return compose(Tf, Tg);
}

double operator_norm(const Eigen::MatrixXcd& M, double tol) {
    const Eigen::Index size = std::max(M.rows(), M.cols());
    if (size == 0) return 0.0;
    if (size <= 2000) {
        Eigen::BDCSVD<Eigen::MatrixXcd> svd(M);
        return svd.singularValues()(0);
    }
    // Power iteration on M* M with a fixed-seed start for reproducibility.
    std::mt19937_64 rng(0x5DEECE66DULL);
    Eigen::VectorXcd v(M.cols());
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double re = static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;
        const double im = static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;
        v(i) = cplx(re, im);
    }
    v.normalize();
    double sigma = 0.0;
    for (int it = 0; it < 20000; ++it) {
        Eigen::VectorXcd w = M * v;
        const double next = w.norm();
        v.noalias() = M.adjoint() * w;
        const double vn = v.norm();
        if (vn == 0.0) return 0.0;
        v /= vn;
        if (it > 0 && std::abs(next - sigma) <= tol * (1.0 + next)) return next;
        sigma = next;
    }
    throw std::runtime_error("operator_norm: power iteration did not converge");
}

double operator_norm(const OperatorMatrix& M, double tol) { return operator_norm(M.mat, tol); }

NormScan norm_scan(const symbols::SymbolExpr& f, const symbols::SymbolExpr& g, int m, int p,
                   int n, const std::vector<int>& D_list, double tol,
                   double plateau_threshold) {
    if (D_list.size() < 3)
        throw std::invalid_argument("norm_scan: need at least 3 degrees");
    for (std::size_t i = 1; i < D_list.size(); ++i)
        if (D_list[i] <= D_list[i - 1])
            throw std::invalid_argument("norm_scan: degrees must be strictly increasing");

    NormScan scan;
    scan.degrees = D_list;
    scan.norms.reserve(D_list.size());
    for (int D : D_list)
        scan.norms.push_back(operator_norm(toeplitz_product(f, g, m, p, n, D, tol)));

    const std::size_t len = scan.norms.size();
    const double inc_last =
        std::abs(scan.norms[len - 1] - scan.norms[len - 2]) / scan.norms[len - 2];
    const double inc_prev =
        std::abs(scan.norms[len - 2] - scan.norms[len - 3]) / scan.norms[len - 3];
    scan.plateau_detected = inc_last < plateau_threshold && inc_prev < plateau_threshold;
    if (!scan.plateau_detected) {
        std::vector<double> xs, ys;
        for (std::size_t i = len / 2; i < len; ++i) {
            xs.push_back(static_cast<double>(scan.degrees[i]));
            ys.push_back(std::log(scan.norms[i]));
        }
        scan.growth_rate = fit_line(xs, ys).slope;
    }
    return scan;
}

double adjoint_residual(const symbols::SymbolExpr& f, const symbols::SymbolExpr& g, int m,
                        int p, int n, int D, double tol) {
    const OperatorMatrix T = toeplitz_product(f, g, m, p, n, D, tol);
    const OperatorMatrix Tadj = toeplitz_product(g, f, m, p, n, D, tol);
    // <T e_i, e_j> = conj(<T' e_j, e_i>): i lives in the F^2_n side, j in the
    // F^2_m side; both restricted to analytic degree <= D/2 so the guard
    // buffer shields the comparison from truncation.
    const int q_common = std::min(m, n);
    const int p_max = D / 2;
    double worst = 0.0;
    for (int qi = 0; qi < q_common; ++qi)
        for (int pi = 0; pi <= p_max; ++pi)
            for (int qj = 0; qj < q_common; ++qj)
                for (int pj = 0; pj <= p_max; ++pj) {
                    const cplx lhs = T.mat(T.codomain.position(pj, qj),
                                           T.domain.position(pi, qi));
                    const cplx rhs = Tadj.mat(Tadj.codomain.position(pi, qi),
                                              Tadj.domain.position(pj, qj));
                    worst = std::max(worst, std::abs(lhs - std::conj(rhs)));
                }
    return worst;
}

}  // namespace focklab::toeplitz
