#ifndef WNK_CHARFUN_HPP
#define WNK_CHARFUN_HPP

// Characteristic functionals on the modeled distribution space: analytic
// forms (white noise, point masses), empirical estimators, the finite-rank
// Gaussian functional used in the weak-convergence argument, the constant
// M = sup (1-cos u)/(1-exp(-u^2)), positive-definiteness checks on Gram
// matrices, and the equicontinuity modulus that operationalizes the
// tightness criterion.

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wnk/basis.hpp"

namespace wnk {

// A characteristic functional evaluated on test functions. Factories cover
// the analytic variants; product-IID functionals are built by the donsker
// module (product_iid_cf). Every instance satisfies cf(0) = 1, |cf| <= 1 and
// cf(-phi) = conj(cf(phi)).
class CharFunctional {
public:
    CharFunctional(std::string name, std::function<std::complex<double>(const TestFunction&)> fn)
        : name_(std::move(name)), fn_(std::move(fn)) {}

    const std::string& name() const { return name_; }
    std::complex<double> operator()(const TestFunction& phi) const { return fn_(phi); }

    static CharFunctional white_noise();
    static CharFunctional dirac(DistributionVector x);
    static CharFunctional empirical(std::vector<DistributionVector> samples);

private:
    std::string name_;
    std::function<std::complex<double>(const TestFunction&)> fn_;
};

// exp(-0.5 |phi|_0^2): the white noise functional. Real, in (0, 1].
std::complex<double> white_noise_cf(const TestFunction& phi);

// exp(i <x, phi>): the point mass at x. Modulus exactly 1.
std::complex<double> dirac_cf(const DistributionVector& x, const TestFunction& phi);

// (1/N) sum_i exp(i <x_i, phi>): Monte-Carlo estimate of a functional from
// samples of the measure.
std::complex<double> empirical_cf(std::span<const DistributionVector> samples,
                                  const TestFunction& phi);

// One draw from the coordinate model of the white noise measure: K iid
// standard normal coefficients.
DistributionVector sample_white_noise(const BasisConfig& basis, std::uint64_t seed);

// F(x) = exp(-sum_l <phi_l, x>^2) for a finite direction list; the empty
// list gives 1. As the characteristic functional of a measure on the test
// space it is evaluated at dual vectors.
double gaussian_mixture_F(std::span<const TestFunction> directions, const DistributionVector& x);

// One draw from the finite-rank Gaussian measure m on the test space whose
// characteristic functional is gaussian_mixture_F: sum_l sqrt(2) g_l phi_l
// with g_l iid standard normal.
TestFunction finite_rank_gaussian_sample(std::span<const TestFunction> directions,
                                         std::uint64_t seed);

// Both sides of the exchange-of-integrals identity
//   integral {1 - F(x)} dmu(x) = integral {1 - Re muhat(phi)} dm(phi),
// estimated by Monte Carlo: lhs over the given mu samples, rhs over n_m
// draws from m. Standard errors accompany each side.
struct FubiniResult {
    double lhs = 0.0;
    double rhs = 0.0;
    double se_lhs = 0.0;
    double se_rhs = 0.0;
};

FubiniResult fubini_check(std::span<const DistributionVector> mu_samples,
                          std::span<const TestFunction> directions, int n_m, std::uint64_t seed);

// The ratio (1 - cos u)/(1 - exp(-u^2)) with its removable singularity at 0
// evaluated stably; ratio(0) = 1/2.
double m_ratio(double u);

struct MConstant {
    double value = 0.0;
    double argmax = 0.0;
};

// sup over u of m_ratio, by coarse grid over |u| <= 30 plus golden-section
// refinement down to abscissa width `tolerance`. Beyond |u| = 30 the ratio
// is within 1e-12 of its tail bound 2, below the peak near pi.
MConstant m_constant_detail(double tolerance);
double m_constant(double tolerance);

struct PsdReport {
    bool is_psd = false;
    double min_eigenvalue = 0.0;
};

// Gram matrix G_ab = cf(phi_a - phi_b); reports whether its minimal
// eigenvalue is >= -tol.
PsdReport gram_psd_check(const CharFunctional& cf, std::span<const TestFunction> probes,
                         double tol);

enum class TightnessVerdict { equicontinuous_at_scale, violation };

struct TightnessReport {
    int m = 0;
    double delta = 0.0;
    double epsilon = 0.0;
    double modulus = 0.0;  // in [0, 2]
    TightnessVerdict verdict = TightnessVerdict::equicontinuous_at_scale;
    std::optional<TestFunction> witness;
};

// max over the family and over `probes` random test functions in the given
// basis rescaled to the sphere |phi|_m = delta of |1 - cf(phi)|. The verdict
// is `violation` when the modulus reaches epsilon. Raw probe directions are
// drawn from the seed only, so scans over (m, delta) grids rescale the same
// directions.
TightnessReport equicontinuity_modulus(std::span<const CharFunctional> family,
                                       const BasisConfig& basis, int m, double delta, int probes,
                                       std::uint64_t seed, double epsilon);

const char* to_string(TightnessVerdict v);

}  // namespace wnk

#endif
