#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "focklab/types.hpp"

namespace focklab::quadrature {

// Product rule for integrals against the Gaussian probability measure
//   dmu(z) = (1/pi) exp(-|z|^2) dlambda(z)
// in polar form z = sqrt(t) e^{i theta}: Gauss-Laguerre nodes (t_i, w_i)
// for weight exp(-t) on (0, inf) crossed with a uniform angular grid
// theta_j = 2 pi j / A, so that
//   int F dmu ~= (1/A) sum_j sum_i w_i F(sqrt(t_i) e^{i theta_j}).
struct QuadratureRule {
    int radial_points = 0;
    int angular_count = 0;
    std::vector<double> radial_node;    // t_i, ascending
    std::vector<double> radial_weight;  // w_i > 0, sum = 1
    std::vector<cplx> angular_phase;    // e^{i theta_j}, j = 0..A-1
};

// Build the rule; radial_points >= 1, angular_count >= 1.  Radial nodes are
// the Gauss-Laguerre abscissae (eigenvalues of the Jacobi matrix, polished
// by Newton steps); weights come from the closed form
//   w_i = t_i / ((R+1)^2 L_{R+1}(t_i)^2).
// Throws std::runtime_error if the node computation does not converge.
QuadratureRule build_rule(int radial_points, int angular_count);

// Shared, memoized rules keyed by (radial_points, angular_count).
std::shared_ptr<const QuadratureRule> cached_rule(int radial_points, int angular_count);

using Integrand = std::function<cplx(cplx)>;

// int F dmu by the rule.  Summation order is fixed (radial-major, ascending)
// so results are reproducible across runs and thread counts.  Radial nodes
// whose weight underflows to zero are skipped; a non-finite integrand value
// at a contributing node throws std::runtime_error naming the node.
cplx integrate(const QuadratureRule& rule, const Integrand& F);

// int F(center + u) dmu(u): the same rule recentered at `center`.
cplx integrate_shifted(const QuadratureRule& rule, const Integrand& F, cplx center);

struct IntegrationReport {
    cplx value{0.0, 0.0};
    double estimated_error = 0.0;  // |value_k - value_{k-1}| at acceptance
    int levels_used = 0;           // doublings needed beyond the base rule
};

// Thrown when the doubling driver exhausts its budget; carries the best
// report so callers can inspect the partial result.
struct QuadratureError : std::runtime_error {
    IntegrationReport best;
    explicit QuadratureError(const std::string& msg, IntegrationReport report)
        : std::runtime_error(msg), best(report) {}
};

// Adaptive driver: evaluate on rules (R0 2^k, A0 2^k), k = 0, 1, ..., until
// |value_k - value_{k-1}| <= tol (1 + |value_k|), starting from (40, 64).
// levels_used reports the last k whose value was already converged (0 when
// the base rule agrees with its first refinement).  Throws QuadratureError
// when max_level doublings do not reach tol.
IntegrationReport integrate_adaptive(const Integrand& F, cplx center, double tol,
                                     int max_level = 6, int base_radial = 40,
                                     int base_angular = 64);

}  // namespace focklab::quadrature
