#include "wnk/hermite.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wnk {

namespace {

constexpr double kQuarterRootPiInv = 0.75112554446494248286;  // pi^(-1/4)

void check_point_args(int k, double t) {
    if (k < 0 || k > kHermiteMaxIndex)
        throw std::out_of_range("hermite_point: k outside supported range [0, 4096]");
    if (!std::isfinite(t)) throw std::invalid_argument("hermite_point: t must be finite");
}

}  // namespace

double hermite_point(int k, double t) {
    check_point_args(k, t);
    double em2 = kQuarterRootPiInv * std::exp(-0.5 * t * t);
    if (k == 0) return em2;
    double em1 = std::numbers::sqrt2 * t * em2;
    for (int j = 2; j <= k; ++j) {
        const double e = std::sqrt(2.0 / j) * t * em1 - std::sqrt((j - 1.0) / j) * em2;
        em2 = em1;
        em1 = e;
    }
    return em1;
}

void hermite_values(double t, std::span<double> out) {
    if (out.empty()) return;
    check_point_args(static_cast<int>(out.size()) - 1, t);
    out[0] = kQuarterRootPiInv * std::exp(-0.5 * t * t);
    if (out.size() == 1) return;
    out[1] = std::numbers::sqrt2 * t * out[0];
    for (std::size_t j = 2; j < out.size(); ++j)
        out[j] = std::sqrt(2.0 / j) * t * out[j - 1] - std::sqrt((j - 1.0) / j) * out[j - 2];
}

GaussHermiteRule gh_rule(int Q) {
    if (Q < 1) throw std::invalid_argument("gh_rule: Q must be >= 1");
    if (Q > kHermiteMaxIndex) throw std::invalid_argument("gh_rule: Q above supported maximum");

    GaussHermiteRule rule;
    rule.Q = Q;
    rule.nodes.resize(Q);
    rule.weights.resize(Q);
    rule.dressed_weights.resize(Q);

    if (Q == 1) {
        rule.nodes[0] = 0.0;
        rule.weights[0] = std::sqrt(std::numbers::pi);
        rule.dressed_weights[0] = rule.weights[0];
        return rule;
    }

    // Nodes are the eigenvalues of the Jacobi matrix (diag 0, off-diag
    // sqrt(j/2)), then polished with Newton on e_Q so the Christoffel weight
    // formula below is evaluated at true roots.
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(Q);
    Eigen::VectorXd sub(Q - 1);
    for (int j = 1; j < Q; ++j) sub[j - 1] = std::sqrt(j / 2.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("gh_rule: tridiagonal eigensolve failed");

    std::vector<double> ek(static_cast<std::size_t>(Q) + 1);
    for (int i = 0; i < Q; ++i) {
        double t = solver.eigenvalues()[i];
        for (int iter = 0; iter < 3; ++iter) {
            hermite_values(t, ek);
            // e_Q'(t) = sqrt(2Q) e_{Q-1}(t) - t e_Q(t)
            const double d = std::sqrt(2.0 * Q) * ek[Q - 1] - t * ek[Q];
            if (d == 0.0) break;
            const double step = ek[Q] / d;
            t -= step;
            if (std::abs(step) < 1e-15 * (1.0 + std::abs(t))) break;
        }
        rule.nodes[i] = t;
    }

    // Enforce exact symmetry about 0.
    for (int i = 0; i < Q / 2; ++i) {
        const double m = 0.5 * (rule.nodes[i] - rule.nodes[Q - 1 - i]);
        rule.nodes[i] = m;
        rule.nodes[Q - 1 - i] = -m;
    }
    if (Q % 2 == 1) rule.nodes[Q / 2] = 0.0;

    // Christoffel form: 1/w_i = sum_{k<Q} htilde_k(t_i)^2 with htilde the
    // weight-orthonormal polynomials; in terms of Hermite functions this is
    //   dressed w_i = 1 / sum_{k<Q} e_k(t_i)^2,
    // which stays well scaled for every node.
    for (int i = 0; i < Q; ++i) {
        hermite_values(rule.nodes[i], std::span<double>(ek.data(), static_cast<std::size_t>(Q)));
        double s = 0.0;
        for (int k = 0; k < Q; ++k) s += ek[k] * ek[k];
        rule.dressed_weights[i] = 1.0 / s;
        rule.weights[i] = rule.dressed_weights[i] * std::exp(-rule.nodes[i] * rule.nodes[i]);
    }
    for (int i = 0; i < Q / 2; ++i) {
        const double w = 0.5 * (rule.weights[i] + rule.weights[Q - 1 - i]);
        rule.weights[i] = rule.weights[Q - 1 - i] = w;
        const double dw = 0.5 * (rule.dressed_weights[i] + rule.dressed_weights[Q - 1 - i]);
        rule.dressed_weights[i] = rule.dressed_weights[Q - 1 - i] = dw;
    }
    return rule;
}

TestFunction project(const std::function<double(double)>& f, const BasisConfig& basis) {
    const GaussHermiteRule rule = gh_rule(basis.Q);
    std::vector<double> fvals(static_cast<std::size_t>(rule.Q));
    for (int i = 0; i < rule.Q; ++i) {
        fvals[i] = f(rule.nodes[i]);
        if (!std::isfinite(fvals[i]))
            throw std::invalid_argument("project: integrand is not finite at a quadrature node");
    }
    std::vector<double> coeffs(static_cast<std::size_t>(basis.K), 0.0);
    std::vector<double> ek(static_cast<std::size_t>(basis.K));
    for (int i = 0; i < rule.Q; ++i) {
        hermite_values(rule.nodes[i], ek);
        const double wf = rule.dressed_weights[i] * fvals[i];
        for (int k = 0; k < basis.K; ++k) coeffs[k] += wf * ek[k];
    }
    return {basis, std::move(coeffs)};
}

double eval(const TestFunction& phi, double t) {
    if (!std::isfinite(t)) throw std::invalid_argument("eval: t must be finite");
    const auto c = phi.coeffs();
    double em2 = kQuarterRootPiInv * std::exp(-0.5 * t * t);
    double acc = c[0] * em2;
    if (c.size() == 1) return acc;
    double em1 = std::numbers::sqrt2 * t * em2;
    acc += c[1] * em1;
    for (std::size_t j = 2; j < c.size(); ++j) {
        const double e = std::sqrt(2.0 / j) * t * em1 - std::sqrt((j - 1.0) / j) * em2;
        em2 = em1;
        em1 = e;
        acc += c[j] * e;
    }
    return acc;
}

double l2_norm_sq(const TestFunction& phi) {
    double s = 0.0;
    for (double c : phi.coeffs()) s += c * c;
    return s;
}

}  // namespace wnk
