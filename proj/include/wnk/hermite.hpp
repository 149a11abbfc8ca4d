#ifndef WNK_HERMITE_HPP
#define WNK_HERMITE_HPP

// Hermite-function basis: stable pointwise evaluation, Gauss-Hermite
// quadrature, projection of real functions onto the truncated basis, and
// Parseval-type integrals.
//
// e_k is the L2-orthonormal Hermite function. It is evaluated by the
// three-term recurrence with the Gaussian factor folded in, so values stay in
// range long after the bare Hermite polynomials would overflow. Supported
// range: 0 <= k <= kHermiteMaxIndex, |t| <= kHermiteMaxAbscissa (values may
// underflow to 0 near the edge of that box; they are always finite).

#include <functional>
#include <span>
#include <vector>

#include "wnk/basis.hpp"

namespace wnk {

inline constexpr int kHermiteMaxIndex = 4096;
inline constexpr double kHermiteMaxAbscissa = 40.0;

double hermite_point(int k, double t);

// Fills out[k] = e_k(t) for k < out.size() in one recurrence sweep.
void hermite_values(double t, std::span<double> out);

// Gauss-Hermite rule of order Q for the weight exp(-t^2). `weights` are the
// raw rule weights; `dressed_weights` are weights[i] * exp(nodes[i]^2),
// computed without overflow, so that
//   integral f(t) dt ~= sum_i dressed_weights[i] * f(nodes[i])
// for integrands that already contain their own Gaussian decay.
struct GaussHermiteRule {
    int Q = 0;
    std::vector<double> nodes;
    std::vector<double> weights;
    std::vector<double> dressed_weights;
};

GaussHermiteRule gh_rule(int Q);

// Coefficients c_k = integral f(t) e_k(t) dt by the basis' Q-point rule.
TestFunction project(const std::function<double(double)>& f, const BasisConfig& basis);

// Pointwise value sum_k c_k e_k(t).
double eval(const TestFunction& phi, double t);

// Parseval: sum of squared coefficients == integral of eval(phi,.)^2.
double l2_norm_sq(const TestFunction& phi);

}  // namespace wnk

#endif
