#ifndef WNK_HILBERT_SCALE_HPP
#define WNK_HILBERT_SCALE_HPP

// The weighted-l2 scale over the Hermite coefficients. Primal norms carry
// weights lambda_k^{2p}, dual norms lambda_k^{-2p} with lambda_k = 2k + 2.
// The dual scale gives the balls B_m(r), the diagonal embedding operators
// between levels, and the exhaustion K_n = (ball of radius r_n = n at level
// n) whose union absorbs every finite coefficient vector.

#include <optional>
#include <span>
#include <vector>

#include "wnk/basis.hpp"

namespace wnk {

// |phi|_p = (sum lambda_k^{2p} c_k^2)^{1/2}; p = 0 is the plain l2 norm.
double norm_primal(const TestFunction& phi, int p);

// |x|_{-p} = (sum lambda_k^{-2p} x_k^2)^{1/2}; nonincreasing in p.
double norm_dual(const DistributionVector& x, int p);

// <x, phi> = sum x_k c_k. Requires matching bases.
double pairing(const DistributionVector& x, const TestFunction& phi);

struct Ball {
    int level = 0;       // dual level m (nonnegative)
    double radius = 1.0; // > 0
};

bool ball_contains(const Ball& ball, const DistributionVector& x);

// Operator norm of the identity-on-coefficients embedding of dual level k
// into dual level n >= k: sup_j lambda_j^{-(n-k)} = 2^{-(n-k)}.
double embedding_norm(int k, int n);

// The diagonal singular values lambda_j^{-(n-k)}, j < count. Square-summable
// for n >= k + 1 (and summable for n >= k + 2, which is what makes the
// two-step embedding trace class on the full scale).
std::vector<double> embedding_singular_values(int k, int n, int count);

// r_n = n. Checked against the containment requirement
// embedding_norm(k, n) * n <= r_n for all 1 <= k <= n.
double exhaustion_radius(int n);

inline constexpr int kExhaustionSearchBound = 64;

// Least n >= 1 with |x|_{-n} <= r_n, or nullopt past the search bound
// (cannot happen for coefficient norms below ~2^64).
std::optional<int> exhaustion_index(const DistributionVector& x,
                                    int search_bound = kExhaustionSearchBound);

// sup over the family of |.|_{-m}: the radius witnessing boundedness at
// level m.
double bound_witness(std::span<const DistributionVector> family, int m);

}  // namespace wnk

#endif
