#include "wnk/charfun.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "wnk/hermite.hpp"
#include "wnk/hilbert_scale.hpp"
#include "wnk/parallel.hpp"
#include "wnk/rng.hpp"

namespace wnk {

CharFunctional CharFunctional::white_noise() {
    return {"white_noise", [](const TestFunction& phi) { return white_noise_cf(phi); }};
}

CharFunctional CharFunctional::dirac(DistributionVector x) {
    return {"dirac", [x = std::move(x)](const TestFunction& phi) { return dirac_cf(x, phi); }};
}

CharFunctional CharFunctional::empirical(std::vector<DistributionVector> samples) {
    if (samples.empty()) throw std::invalid_argument("CharFunctional::empirical: no samples");
    return {"empirical", [s = std::move(samples)](const TestFunction& phi) {
                return empirical_cf(s, phi);
            }};
}

std::complex<double> white_noise_cf(const TestFunction& phi) {
    return {std::exp(-0.5 * l2_norm_sq(phi)), 0.0};
}

std::complex<double> dirac_cf(const DistributionVector& x, const TestFunction& phi) {
    return std::polar(1.0, pairing(x, phi));
}

std::complex<double> empirical_cf(std::span<const DistributionVector> samples,
                                  const TestFunction& phi) {
    if (samples.empty()) throw std::invalid_argument("empirical_cf: empty sample list");
    double re = 0.0, im = 0.0;
    for (const auto& x : samples) {
        const double s = pairing(x, phi);
        re += std::cos(s);
        im += std::sin(s);
    }
    const double n = static_cast<double>(samples.size());
    return {re / n, im / n};
}

DistributionVector sample_white_noise(const BasisConfig& basis, std::uint64_t seed) {
    CounterRng rng(seed);
    std::vector<double> c(static_cast<std::size_t>(basis.K));
    for (double& v : c) v = rng.next_normal();
    return {basis, std::move(c)};
}

double gaussian_mixture_F(std::span<const TestFunction> directions, const DistributionVector& x) {
    double s = 0.0;
    for (const auto& phi : directions) {
        const double p = pairing(x, phi);
        s += p * p;
    }
    return std::exp(-s);
}

TestFunction finite_rank_gaussian_sample(std::span<const TestFunction> directions,
                                         std::uint64_t seed) {
    if (directions.empty())
        throw std::invalid_argument("finite_rank_gaussian_sample: empty direction list");
    const BasisConfig basis = directions.front().basis();
    std::vector<double> c(static_cast<std::size_t>(basis.K), 0.0);
    CounterRng rng(seed);
    for (const auto& phi : directions) {
        if (phi.basis().K != basis.K)
            throw std::invalid_argument("finite_rank_gaussian_sample: basis mismatch");
        const double g = std::numbers::sqrt2 * rng.next_normal();
        const auto pc = phi.coeffs();
        for (std::size_t k = 0; k < c.size(); ++k) c[k] += g * pc[k];
    }
    return {basis, std::move(c)};
}

FubiniResult fubini_check(std::span<const DistributionVector> mu_samples,
                          std::span<const TestFunction> directions, int n_m, std::uint64_t seed) {
    if (mu_samples.empty()) throw std::invalid_argument("fubini_check: empty mu sample list");
    if (directions.empty()) throw std::invalid_argument("fubini_check: empty direction list");
    if (n_m < 1) throw std::invalid_argument("fubini_check: n_m must be >= 1");

    FubiniResult out;

    // lhs: mean over the mu samples of 1 - F.
    {
        double s = 0.0, s2 = 0.0;
        for (const auto& x : mu_samples) {
            const double v = 1.0 - gaussian_mixture_F(directions, x);
            s += v;
            s2 += v * v;
        }
        const double n = static_cast<double>(mu_samples.size());
        out.lhs = s / n;
        const double var = std::max(0.0, s2 / n - out.lhs * out.lhs);
        out.se_lhs = std::sqrt(var / n);
    }

    // rhs: mean over draws phi ~ m of 1 - Re muhat(phi), with muhat the
    // empirical functional of the same mu samples.
    {
        std::vector<double> vals(static_cast<std::size_t>(n_m));
        parallel_for(n_m, [&](std::int64_t t) {
            const TestFunction phi =
                finite_rank_gaussian_sample(directions, derive(seed, static_cast<std::uint64_t>(t)));
            vals[static_cast<std::size_t>(t)] =
                1.0 - empirical_cf(mu_samples, phi).real();
        });
        double s = 0.0, s2 = 0.0;
        for (double v : vals) {
            s += v;
            s2 += v * v;
        }
        const double n = static_cast<double>(n_m);
        out.rhs = s / n;
        const double var = std::max(0.0, s2 / n - out.rhs * out.rhs);
        out.se_rhs = std::sqrt(var / n);
    }
    return out;
}

double m_ratio(double u) {
    if (u == 0.0) return 0.5;
    const double s = std::sin(0.5 * u);
    return 2.0 * s * s / (-std::expm1(-u * u));
}

MConstant m_constant_detail(double tolerance) {
    if (!(tolerance > 0.0)) throw std::invalid_argument("m_constant: tolerance must be > 0");

    // The ratio is even; scan u >= 0.
    constexpr double kDomain = 30.0;
    constexpr double kStep = 0.01;
    double best_u = 0.0;
    double best_v = m_ratio(0.0);
    for (double u = kStep; u <= kDomain; u += kStep) {
        const double v = m_ratio(u);
        if (v > best_v) {
            best_v = v;
            best_u = u;
        }
    }

    // Golden-section refinement around the grid winner.
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = std::max(0.0, best_u - 2.0 * kStep);
    double b = std::min(kDomain, best_u + 2.0 * kStep);
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = m_ratio(c), fd = m_ratio(d);
    while (b - a > tolerance) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = m_ratio(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = m_ratio(d);
        }
    }
    const double u_star = 0.5 * (a + b);
    const double v_star = m_ratio(u_star);
    if (v_star > best_v) {
        best_v = v_star;
        best_u = u_star;
    }
    return {best_v, best_u};
}

double m_constant(double tolerance) { return m_constant_detail(tolerance).value; }

PsdReport gram_psd_check(const CharFunctional& cf, std::span<const TestFunction> probes,
                         double tol) {
    if (probes.empty()) throw std::invalid_argument("gram_psd_check: empty probe list");
    const auto n = static_cast<Eigen::Index>(probes.size());
    Eigen::MatrixXcd gram(n, n);
    for (Eigen::Index a = 0; a < n; ++a) {
        gram(a, a) = cf(probes[static_cast<std::size_t>(a)] - probes[static_cast<std::size_t>(a)]);
        for (Eigen::Index b = 0; b < a; ++b) {
            const std::complex<double> v =
                cf(probes[static_cast<std::size_t>(a)] - probes[static_cast<std::size_t>(b)]);
            gram(a, b) = v;
            gram(b, a) = std::conj(v);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("gram_psd_check: eigensolve failed");
    const double min_eig = solver.eigenvalues().minCoeff();
    return {min_eig >= -tol, min_eig};
}

TightnessReport equicontinuity_modulus(std::span<const CharFunctional> family,
                                       const BasisConfig& basis, int m, double delta, int probes,
                                       std::uint64_t seed, double epsilon) {
    if (family.empty()) throw std::invalid_argument("equicontinuity_modulus: empty family");
    if (!(delta > 0.0)) throw std::invalid_argument("equicontinuity_modulus: delta must be > 0");
    if (probes < 1) throw std::invalid_argument("equicontinuity_modulus: probes must be >= 1");
    if (m < 0) throw std::invalid_argument("equicontinuity_modulus: m must be >= 0");

    TightnessReport report;
    report.m = m;
    report.delta = delta;
    report.epsilon = epsilon;

    for (int p = 0; p < probes; ++p) {
        CounterRng rng(seed, static_cast<std::uint64_t>(p));
        std::vector<double> raw(static_cast<std::size_t>(basis.K));
        for (double& v : raw) v = rng.next_normal();
        TestFunction direction(basis, std::move(raw));
        const double nm = norm_primal(direction, m);
        if (nm == 0.0) continue;
        const TestFunction probe = (delta / nm) * direction;
        for (const auto& cf : family) {
            const double v = std::abs(1.0 - cf(probe));
            if (v > report.modulus) {
                report.modulus = v;
                report.witness = probe;
            }
        }
    }
    report.verdict = report.modulus >= epsilon ? TightnessVerdict::violation
                                               : TightnessVerdict::equicontinuous_at_scale;
    return report;
}

const char* to_string(TightnessVerdict v) {
    return v == TightnessVerdict::equicontinuous_at_scale ? "equicontinuous-at-scale" : "violation";
}

}  // namespace wnk
