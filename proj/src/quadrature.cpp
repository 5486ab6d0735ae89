#include "focklab/quadrature.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

namespace focklab::quadrature {

namespace {

// Scaled Laguerre values l_k(x) = L_k(x) exp(-x/2) for k = R-ish degrees;
// the three-term recurrence is unchanged by the x-dependent scaling and the
// scaled values stay O(1), avoiding overflow at large nodes.
void scaled_laguerre_pair(int degree, double x, double& l_deg, double& l_degm1) {
    double lm1 = std::exp(-x / 2.0);      // l_0
    double l = (1.0 - x) * lm1;           // l_1
    if (degree == 0) {
        l_deg = lm1;
        l_degm1 = 0.0;
        return;
    }
    for (int k = 1; k < degree; ++k) {
        const double kd = static_cast<double>(k);
        const double lp1 = ((2.0 * kd + 1.0 - x) * l - kd * lm1) / (kd + 1.0);
        lm1 = l;
        l = lp1;
    }
    l_deg = l;
    l_degm1 = lm1;
}

}  // namespace

QuadratureRule build_rule(int radial_points, int angular_count) {
    if (radial_points < 1 || angular_count < 1)
        throw std::invalid_argument("build_rule: counts must be >= 1");
    const int R = radial_points;

    // Jacobi matrix of the Laguerre weight exp(-t): diagonal 2k+1,
    // off-diagonal k; its eigenvalues are the nodes (Golub-Welsch).
    Eigen::VectorXd diag(R), subdiag(R > 1 ? R - 1 : 0);
    for (int k = 0; k < R; ++k) diag(k) = 2.0 * k + 1.0;
    for (int k = 1; k < R; ++k) subdiag(k - 1) = static_cast<double>(k);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, subdiag, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("build_rule: Gauss-Laguerre node computation failed");

    QuadratureRule rule;
    rule.radial_points = R;
    rule.angular_count = angular_count;
    rule.radial_node.resize(R);
    rule.radial_weight.resize(R);
    for (int i = 0; i < R; ++i) {
        double t = solver.eigenvalues()(i);
        // Polish the eigenvalue with Newton steps on L_R(t) = 0 using
        //   t L_R'(t) = R (L_R(t) - L_{R-1}(t)).
        for (int step = 0; step < 3; ++step) {
            double lR, lRm1;
            scaled_laguerre_pair(R, t, lR, lRm1);
            const double deriv = static_cast<double>(R) * (lR - lRm1) / t;
            if (deriv == 0.0) break;
            const double dt = lR / deriv;
            t -= dt;
            if (std::abs(dt) <= 1e-15 * t) break;
        }
        if (!(t > 0.0) || !std::isfinite(t))
            throw std::runtime_error("build_rule: node polish diverged");
        // w_i = t_i / ((R+1)^2 L_{R+1}(t_i)^2), evaluated with the scaled
        // recurrence so the weight underflows gracefully instead of 0/inf.
        double lRp1, lR;
        scaled_laguerre_pair(R + 1, t, lRp1, lR);
        const double denom = static_cast<double>(R + 1) * lRp1;
        const double numer = t * std::exp(-t);
        rule.radial_node[i] = t;
        if (numer == 0.0 || denom == 0.0) {
            // exp(-t) (or the scaled recurrence seed exp(-t/2)) underflowed:
            // the true weight is far below double range, so the node
            // contributes exactly nothing and integrate() skips it.
            rule.radial_weight[i] = 0.0;
        } else {
            rule.radial_weight[i] = numer / (denom * denom);
            if (!std::isfinite(rule.radial_weight[i]) || rule.radial_weight[i] < 0.0)
                throw std::runtime_error("build_rule: weight computation failed");
        }
    }

    rule.angular_phase.resize(angular_count);
    for (int j = 0; j < angular_count; ++j) {
        const double theta = 2.0 * M_PI * static_cast<double>(j) /
                             static_cast<double>(angular_count);
        rule.angular_phase[j] = cplx(std::cos(theta), std::sin(theta));
    }
    return rule;
}

std::shared_ptr<const QuadratureRule> cached_rule(int radial_points, int angular_count) {
    static std::mutex mtx;
    static std::map<std::pair<int, int>, std::shared_ptr<const QuadratureRule>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(radial_points, angular_count);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto rule = std::make_shared<const QuadratureRule>(build_rule(radial_points, angular_count));
    cache.emplace(key, rule);
    return rule;
}

cplx integrate(const QuadratureRule& rule, const Integrand& F) {
    return integrate_shifted(rule, F, cplx(0.0, 0.0));
}

cplx integrate_shifted(const QuadratureRule& rule, const Integrand& F, cplx center) {
    const double inv_A = 1.0 / static_cast<double>(rule.angular_count);
    cplx acc(0.0, 0.0);
    for (int i = 0; i < rule.radial_points; ++i) {
        const double w = rule.radial_weight[i];
        if (w == 0.0) continue;  // node beyond double range; contributes nothing
        const double r = std::sqrt(rule.radial_node[i]);
        cplx ring(0.0, 0.0);
        for (int j = 0; j < rule.angular_count; ++j) {
            const cplx value = F(center + r * rule.angular_phase[j]);
            if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
                std::ostringstream msg;
                msg << "integrate: non-finite integrand at node (t=" << rule.radial_node[i]
                    << ", j=" << j << ")";
                throw std::runtime_error(msg.str());
            }
            ring += value;
        }
        acc += (w * inv_A) * ring;
    }
    return acc;
}

IntegrationReport integrate_adaptive(const Integrand& F, cplx center, double tol,
                                     int max_level, int base_radial, int base_angular) {
    if (tol <= 0.0) throw std::invalid_argument("integrate_adaptive: tol must be > 0");
    IntegrationReport report;
    cplx prev(0.0, 0.0);
    for (int level = 0; level <= max_level; ++level) {
        const auto rule = cached_rule(base_radial << level, base_angular << level);
        const cplx value = integrate_shifted(*rule, F, center);
        if (level > 0) {
            const double delta = std::abs(value - prev);
            report.value = value;
            report.estimated_error = delta;
            report.levels_used = level - 1;
            if (delta <= tol * (1.0 + std::abs(value))) return report;
        }
        prev = value;
    }
    throw QuadratureError("integrate_adaptive: tolerance not reached within level budget",
                          report);
}

}  // namespace focklab::quadrature
