#include "wnk/hilbert_scale.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace wnk {

namespace {

double weighted_norm(std::span<const double> coeffs, int p, bool dual) {
    if (p < 0) throw std::invalid_argument("scale level must be nonnegative");
    double s = 0.0;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        const double w = std::pow(BasisConfig::lambda(static_cast<int>(k)),
                                  dual ? -2.0 * p : 2.0 * p);
        s += coeffs[k] * coeffs[k] * w;
    }
    if (!std::isfinite(s)) throw std::range_error("scale norm overflows at this level");
    return std::sqrt(s);
}

}  // namespace

double norm_primal(const TestFunction& phi, int p) { return weighted_norm(phi.coeffs(), p, false); }

double norm_dual(const DistributionVector& x, int p) { return weighted_norm(x.coeffs(), p, true); }

double pairing(const DistributionVector& x, const TestFunction& phi) {
    if (x.basis().K != phi.basis().K)
        throw std::invalid_argument("pairing: basis mismatch between x and phi");
    double s = 0.0;
    const auto xs = x.coeffs();
    const auto cs = phi.coeffs();
    for (std::size_t k = 0; k < xs.size(); ++k) s += xs[k] * cs[k];
    return s;
}

bool ball_contains(const Ball& ball, const DistributionVector& x) {
    if (ball.level < 0) throw std::invalid_argument("ball_contains: negative level");
    if (!(ball.radius > 0.0)) throw std::invalid_argument("ball_contains: radius must be > 0");
    return norm_dual(x, ball.level) <= ball.radius;
}

double embedding_norm(int k, int n) {
    if (k < 0) throw std::invalid_argument("embedding_norm: negative level");
    if (n < k) throw std::invalid_argument("embedding_norm: target level below source level");
    return std::pow(2.0, -static_cast<double>(n - k));
}

std::vector<double> embedding_singular_values(int k, int n, int count) {
    if (k < 0 || n < k) throw std::invalid_argument("embedding_singular_values: bad levels");
    if (count < 0) throw std::invalid_argument("embedding_singular_values: negative count");
    std::vector<double> sv(static_cast<std::size_t>(count));
    for (int j = 0; j < count; ++j)
        sv[static_cast<std::size_t>(j)] = std::pow(BasisConfig::lambda(j), -static_cast<double>(n - k));
    return sv;
}

double exhaustion_radius(int n) {
    if (n < 1) throw std::invalid_argument("exhaustion_radius: n must be >= 1");
    const double r = static_cast<double>(n);
    for (int k = 1; k <= n; ++k) assert(embedding_norm(k, n) * n <= r);
    return r;
}

std::optional<int> exhaustion_index(const DistributionVector& x, int search_bound) {
    if (search_bound < 1) throw std::invalid_argument("exhaustion_index: bad search bound");
    for (int n = 1; n <= search_bound; ++n)
        if (norm_dual(x, n) <= exhaustion_radius(n)) return n;
    return std::nullopt;
}

double bound_witness(std::span<const DistributionVector> family, int m) {
    if (family.empty()) throw std::invalid_argument("bound_witness: empty family");
    double r = 0.0;
    for (const auto& x : family) r = std::max(r, norm_dual(x, m));
    return r;
}

}  // namespace wnk
