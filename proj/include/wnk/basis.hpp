#ifndef WNK_BASIS_HPP
#define WNK_BASIS_HPP

// Truncated Hermite-function model of the Schwartz space and its dual.
// A BasisConfig fixes the truncation dimension K and quadrature order Q under
// the eigenvalue convention lambda_k = 2k + 2 (the number operator plus one).
// TestFunction holds primal coefficients (an element of the test space),
// DistributionVector holds dual coefficients (an element of the modeled
// distribution space). Both are immutable after construction.

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wnk {

inline constexpr std::string_view kCoeffConvention = "lambda=2k+2";

struct BasisConfig {
    int K = 1;  // number of basis functions e_0 .. e_{K-1}
    int Q = 64; // Gauss-Hermite order used for projections

    static double lambda(int k) { return 2.0 * k + 2.0; }

    friend bool operator==(const BasisConfig&, const BasisConfig&) = default;
};

// Q defaults to max(2K, 64): exact for pairwise products of basis functions
// with margin for smooth non-polynomial integrands.
inline BasisConfig make_basis(int K, int Q = 0) {
    if (K < 1) throw std::invalid_argument("basis: K must be >= 1");
    if (Q <= 0) Q = std::max(2 * K, 64);
    if (Q < 2 * K) throw std::invalid_argument("basis: Q must be >= 2K");
    return BasisConfig{K, Q};
}

namespace detail {
inline std::vector<double> checked_coeffs(const BasisConfig& basis, std::vector<double> c,
                                          const char* what) {
    if (basis.K < 1 || basis.Q < 2 * basis.K)
        throw std::invalid_argument(std::string(what) + ": invalid basis");
    if (c.size() > static_cast<std::size_t>(basis.K))
        throw std::invalid_argument(std::string(what) + ": more coefficients than basis dimension");
    c.resize(static_cast<std::size_t>(basis.K), 0.0);
    for (double v : c)
        if (!std::isfinite(v))
            throw std::invalid_argument(std::string(what) + ": non-finite coefficient");
    return c;
}
}  // namespace detail

class TestFunction {
public:
    TestFunction(BasisConfig basis, std::vector<double> coeffs)
        : basis_(basis), coeffs_(detail::checked_coeffs(basis, std::move(coeffs), "TestFunction")) {}

    const BasisConfig& basis() const { return basis_; }
    std::span<const double> coeffs() const { return coeffs_; }
    double coeff(int k) const { return coeffs_[static_cast<std::size_t>(k)]; }
    int dim() const { return basis_.K; }

    // e_k as a test function.
    static TestFunction basis_vector(BasisConfig basis, int k, double scale = 1.0) {
        if (k < 0 || k >= basis.K) throw std::out_of_range("basis_vector: index outside basis");
        std::vector<double> c(static_cast<std::size_t>(basis.K), 0.0);
        c[static_cast<std::size_t>(k)] = scale;
        return {basis, std::move(c)};
    }

    friend TestFunction operator+(const TestFunction& a, const TestFunction& b) {
        a.require_same_span(b);
        std::vector<double> c(a.coeffs_.begin(), a.coeffs_.end());
        for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.coeffs_[i];
        return {a.basis_, std::move(c)};
    }
    friend TestFunction operator-(const TestFunction& a, const TestFunction& b) {
        a.require_same_span(b);
        std::vector<double> c(a.coeffs_.begin(), a.coeffs_.end());
        for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b.coeffs_[i];
        return {a.basis_, std::move(c)};
    }
    friend TestFunction operator*(double s, const TestFunction& a) {
        std::vector<double> c(a.coeffs_.begin(), a.coeffs_.end());
        for (double& v : c) v *= s;
        return {a.basis_, std::move(c)};
    }
    friend TestFunction operator-(const TestFunction& a) { return -1.0 * a; }

    void require_same_span(const TestFunction& other) const {
        if (basis_.K != other.basis_.K)
            throw std::invalid_argument("test functions live in different bases");
    }

private:
    BasisConfig basis_;
    std::vector<double> coeffs_;
};

class DistributionVector {
public:
    DistributionVector(BasisConfig basis, std::vector<double> coeffs)
        : basis_(basis),
          coeffs_(detail::checked_coeffs(basis, std::move(coeffs), "DistributionVector")) {}

    const BasisConfig& basis() const { return basis_; }
    std::span<const double> coeffs() const { return coeffs_; }
    double coeff(int k) const { return coeffs_[static_cast<std::size_t>(k)]; }
    int dim() const { return basis_.K; }

    // Dual unit vector on coordinate k, scaled.
    static DistributionVector basis_vector(BasisConfig basis, int k, double scale = 1.0) {
        if (k < 0 || k >= basis.K) throw std::out_of_range("basis_vector: index outside basis");
        std::vector<double> c(static_cast<std::size_t>(basis.K), 0.0);
        c[static_cast<std::size_t>(k)] = scale;
        return {basis, std::move(c)};
    }

    friend DistributionVector operator-(const DistributionVector& a, const DistributionVector& b) {
        if (a.basis_.K != b.basis_.K)
            throw std::invalid_argument("distribution vectors live in different bases");
        std::vector<double> c(a.coeffs_.begin(), a.coeffs_.end());
        for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b.coeffs_[i];
        return {a.basis_, std::move(c)};
    }

private:
    BasisConfig basis_;
    std::vector<double> coeffs_;
};

}  // namespace wnk

#endif
