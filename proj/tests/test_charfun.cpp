#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "wnk/charfun.hpp"
#include "wnk/donsker.hpp"
#include "wnk/hermite.hpp"
#include "wnk/hilbert_scale.hpp"
#include "wnk/rng.hpp"

using namespace wnk;

namespace {

TestFunction random_primal(const BasisConfig& basis, std::uint64_t seed) {
    CounterRng rng(seed);
    std::vector<double> c(static_cast<std::size_t>(basis.K));
    for (double& v : c) v = rng.next_normal();
    return {basis, std::move(c)};
}

// Eigenvalues of a symmetric 3x3 matrix by the trigonometric closed form;
// independent of the library's eigensolver.
std::array<double, 3> sym3_eigenvalues(const std::array<std::array<double, 3>, 3>& A) {
    const double p1 = A[0][1] * A[0][1] + A[0][2] * A[0][2] + A[1][2] * A[1][2];
    const double q = (A[0][0] + A[1][1] + A[2][2]) / 3.0;
    const double p2 = (A[0][0] - q) * (A[0][0] - q) + (A[1][1] - q) * (A[1][1] - q) +
                      (A[2][2] - q) * (A[2][2] - q) + 2.0 * p1;
    const double p = std::sqrt(p2 / 6.0);
    std::array<std::array<double, 3>, 3> B{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) B[i][j] = (A[i][j] - (i == j ? q : 0.0)) / p;
    const double detB = B[0][0] * (B[1][1] * B[2][2] - B[1][2] * B[2][1]) -
                        B[0][1] * (B[1][0] * B[2][2] - B[1][2] * B[2][0]) +
                        B[0][2] * (B[1][0] * B[2][1] - B[1][1] * B[2][0]);
    const double r = std::clamp(detB / 2.0, -1.0, 1.0);
    const double phi = std::acos(r) / 3.0;
    const double eig1 = q + 2.0 * p * std::cos(phi);
    const double eig3 = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
    return {eig1, 3.0 * q - eig1 - eig3, eig3};
}

}  // namespace

TEST_CASE("white noise functional closed forms") {
    const BasisConfig basis = make_basis(4);
    CHECK(white_noise_cf(TestFunction(basis, {})) == std::complex<double>(1.0, 0.0));
    CHECK(white_noise_cf(TestFunction::basis_vector(basis, 0)).real() ==
          doctest::Approx(std::exp(-0.5)).epsilon(1e-15));
    CHECK(white_noise_cf(TestFunction::basis_vector(basis, 0, 2.0)).real() ==
          doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
}

TEST_CASE("dirac functional") {
    const BasisConfig basis = make_basis(4);
    const TestFunction zero(basis, {});
    const auto x0 = DistributionVector(basis, {});
    const auto e0 = TestFunction::basis_vector(basis, 0);
    CHECK(dirac_cf(DistributionVector::basis_vector(basis, 2, 5.0), zero) ==
          std::complex<double>(1.0, 0.0));
    CHECK(dirac_cf(x0, random_primal(basis, 7)) == std::complex<double>(1.0, 0.0));
    const auto v = dirac_cf(DistributionVector::basis_vector(basis, 0, std::numbers::pi), e0);
    CHECK(v.real() == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(std::abs(v.imag()) < 1e-15);
    CHECK(std::abs(v) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("empirical functional on symmetric samples is a cosine") {
    const BasisConfig basis = make_basis(4);
    const auto x = sample_white_noise(basis, 99);
    const DistributionVector neg(basis, [&] {
        std::vector<double> c(x.coeffs().begin(), x.coeffs().end());
        for (double& v : c) v = -v;
        return c;
    }());
    const auto phi = random_primal(basis, 3);
    const std::vector<DistributionVector> samples = {x, neg};
    const auto v = empirical_cf(samples, phi);
    CHECK(v.real() == doctest::Approx(std::cos(pairing(x, phi))).epsilon(1e-14));
    CHECK(std::abs(v.imag()) < 1e-16);
    CHECK(empirical_cf(samples, TestFunction(basis, {})) == std::complex<double>(1.0, 0.0));
    CHECK_THROWS_AS(empirical_cf({}, phi), std::invalid_argument);
}

TEST_CASE("white noise samples reproduce the functional") {
    const BasisConfig basis = make_basis(4);
    const int N = 100000;
    std::vector<DistributionVector> samples;
    samples.reserve(N);
    const std::uint64_t seed = 2024;
    for (int i = 0; i < N; ++i)
        samples.push_back(sample_white_noise(basis, derive(seed, static_cast<std::uint64_t>(i))));

    const auto e0 = TestFunction::basis_vector(basis, 0);
    SUBCASE("pairing moments") {
        double mean = 0.0, m2 = 0.0;
        for (const auto& x : samples) {
            const double p = pairing(x, e0);
            mean += p;
            m2 += p * p;
        }
        mean /= N;
        m2 /= N;
        CHECK(std::abs(mean) <= 5.0 / std::sqrt(static_cast<double>(N)));
        CHECK(std::abs(m2 - mean * mean - 1.0) <=
              5.0 * std::sqrt(2.0 / static_cast<double>(N)));
    }
    SUBCASE("empirical functional within Monte-Carlo error of the analytic one") {
        const auto emp = empirical_cf(samples, e0);
        CHECK(std::abs(emp - white_noise_cf(e0)) <= 5.0 / std::sqrt(static_cast<double>(N)));
    }
}

TEST_CASE("gaussian mixture functional") {
    const BasisConfig basis = make_basis(4);
    const std::vector<TestFunction> dirs = {TestFunction::basis_vector(basis, 0)};
    CHECK(gaussian_mixture_F(dirs, DistributionVector(basis, {})) == 1.0);
    CHECK(gaussian_mixture_F(dirs, DistributionVector::basis_vector(basis, 0)) ==
          doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(gaussian_mixture_F({}, sample_white_noise(basis, 5)) == 1.0);
}

TEST_CASE("finite rank gaussian samples realize the mixture functional") {
    const BasisConfig basis = make_basis(4);
    const std::vector<TestFunction> dirs = {TestFunction::basis_vector(basis, 0)};
    CHECK_THROWS_AS(finite_rank_gaussian_sample({}, 1), std::invalid_argument);

    SUBCASE("all-zero directions give the zero function") {
        const std::vector<TestFunction> zero_dirs = {TestFunction(basis, {})};
        const auto s = finite_rank_gaussian_sample(zero_dirs, 17);
        for (double c : s.coeffs()) CHECK(c == 0.0);
    }

    const int N = 100000;
    SUBCASE("characteristic function matches F at a fixed dual point") {
        const auto x = DistributionVector::basis_vector(basis, 0);  // F(x) = exp(-1)
        std::complex<double> acc(0.0, 0.0);
        for (int i = 0; i < N; ++i) {
            const auto phi = finite_rank_gaussian_sample(dirs, derive(41, static_cast<std::uint64_t>(i)));
            acc += std::polar(1.0, pairing(x, phi));
        }
        acc /= static_cast<double>(N);
        CHECK(std::abs(acc - std::complex<double>(gaussian_mixture_F(dirs, x), 0.0)) <=
              5.0 / std::sqrt(static_cast<double>(N)));
    }

    SUBCASE("orthogonal directions give independent coefficients with variance 2") {
        const std::vector<TestFunction> dirs2 = {TestFunction::basis_vector(basis, 0),
                                                 TestFunction::basis_vector(basis, 1)};
        const int M = 20000;
        double v0 = 0.0, v1 = 0.0, cov = 0.0;
        for (int i = 0; i < M; ++i) {
            const auto phi =
                finite_rank_gaussian_sample(dirs2, derive(4242, static_cast<std::uint64_t>(i)));
            v0 += phi.coeff(0) * phi.coeff(0);
            v1 += phi.coeff(1) * phi.coeff(1);
            cov += phi.coeff(0) * phi.coeff(1);
        }
        v0 /= M;
        v1 /= M;
        cov /= M;
        const double se_var = 2.0 * std::sqrt(2.0 / static_cast<double>(M));
        CHECK(std::abs(v0 - 2.0) <= 5.0 * se_var);
        CHECK(std::abs(v1 - 2.0) <= 5.0 * se_var);
        CHECK(std::abs(cov) <= 5.0 * 2.0 / std::sqrt(static_cast<double>(M)));
    }
}

TEST_CASE("fubini identity") {
    const BasisConfig basis = make_basis(4);
    const std::vector<TestFunction> dirs = {TestFunction::basis_vector(basis, 0)};

    SUBCASE("degenerate measure at zero") {
        const std::vector<DistributionVector> samples = {DistributionVector(basis, {})};
        // F(0) = 1 and the functional of the point mass at zero is
        // identically 1, so both sides vanish exactly.
        const auto r = fubini_check(samples, dirs, 50, 1);
        CHECK(r.lhs == 0.0);
        CHECK(r.rhs == 0.0);
    }

    SUBCASE("white noise measure against the analytic limit") {
        const int N = 100000;
        std::vector<DistributionVector> samples;
        samples.reserve(N);
        for (int i = 0; i < N; ++i)
            samples.push_back(sample_white_noise(basis, derive(77, static_cast<std::uint64_t>(i))));
        const auto r = fubini_check(samples, dirs, 2000, 7);
        // E[1 - exp(-g^2)] = 1 - 3^{-1/2}.
        const double expected = 1.0 - 1.0 / std::sqrt(3.0);
        CHECK(std::abs(r.lhs - expected) <= 5.0 * r.se_lhs);
        CHECK(std::abs(r.lhs - r.rhs) <= 5.0 * (r.se_lhs + r.se_rhs));
    }

    SUBCASE("input validation") {
        const std::vector<DistributionVector> samples = {DistributionVector(basis, {})};
        CHECK_THROWS_AS(fubini_check({}, dirs, 10, 1), std::invalid_argument);
        CHECK_THROWS_AS(fubini_check(samples, {}, 10, 1), std::invalid_argument);
        CHECK_THROWS_AS(fubini_check(samples, dirs, 0, 1), std::invalid_argument);
    }
}

TEST_CASE("the ratio under the sup defining M") {
    CHECK(m_ratio(0.0) == 0.5);
    CHECK(m_ratio(1e-9) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(m_ratio(-1e-6) == doctest::Approx(0.5).epsilon(1e-6));
    const double at_pi = 2.0 / (-std::expm1(-std::numbers::pi * std::numbers::pi));
    CHECK(m_ratio(std::numbers::pi) == doctest::Approx(at_pi).epsilon(1e-14));
    CHECK(at_pi == doctest::Approx(2.0001034517232).epsilon(1e-12));
}

TEST_CASE("M constant against an independent dense grid") {
    const MConstant mc = m_constant_detail(1e-10);
    double grid_best = 0.0, grid_u = 0.0;
    for (double u = 0.0; u <= 30.0; u += 1e-4) {
        const double v = m_ratio(u);
        if (v > grid_best) {
            grid_best = v;
            grid_u = u;
        }
    }
    CHECK(mc.value >= grid_best - 1e-12);
    CHECK(mc.value <= grid_best + 1e-7);
    CHECK(std::abs(mc.argmax - grid_u) <= 1e-3);
    CHECK(mc.value >= 2.0000);
    CHECK(mc.value <= 2.0002);
    CHECK(std::abs(mc.argmax - std::numbers::pi) <= 0.05);
    CHECK_THROWS_AS(m_constant(0.0), std::invalid_argument);
}

TEST_CASE("gram positive definiteness") {
    const BasisConfig basis = make_basis(4);
    const TestFunction zero(basis, {});
    const auto e0 = TestFunction::basis_vector(basis, 0);
    const auto e1 = TestFunction::basis_vector(basis, 1);

    SUBCASE("white noise Gram over {0, e0, e1} matches the closed-form eigenvalues") {
        const std::vector<TestFunction> probes = {zero, e0, e1};
        const auto rep = gram_psd_check(CharFunctional::white_noise(), probes, 1e-10);
        const double a = std::exp(-0.5);
        const double b = std::exp(-1.0);
        const auto eigs = sym3_eigenvalues({{{1.0, a, a}, {a, 1.0, b}, {a, b, 1.0}}});
        const double oracle_min = *std::min_element(eigs.begin(), eigs.end());
        CHECK(rep.is_psd);
        CHECK(oracle_min > 0.0);
        CHECK(rep.min_eigenvalue == doctest::Approx(oracle_min).epsilon(1e-10));
    }

    SUBCASE("dirac Gram is rank one with modulus one") {
        std::vector<TestFunction> probes;
        for (std::uint64_t s = 0; s < 6; ++s) probes.push_back(random_primal(basis, 900 + s));
        const auto rep =
            gram_psd_check(CharFunctional::dirac(sample_white_noise(basis, 11)), probes, 1e-10);
        CHECK(rep.is_psd);
        CHECK(rep.min_eigenvalue >= -1e-10);
        CHECK(rep.min_eigenvalue <= 1e-10);  // rank 1: all but one eigenvalue vanish
    }

    SUBCASE("single probe") {
        const std::vector<TestFunction> probes = {e0};
        const auto rep = gram_psd_check(CharFunctional::white_noise(), probes, 0.0);
        CHECK(rep.is_psd);
        CHECK(rep.min_eigenvalue == doctest::Approx(1.0).epsilon(1e-15));
    }

    SUBCASE("random probe batches stay PSD") {
        for (std::uint64_t trial = 0; trial < 20; ++trial) {
            std::vector<TestFunction> probes;
            for (std::uint64_t p = 0; p < 16; ++p)
                probes.push_back(random_primal(basis, 3000 + trial * 64 + p));
            const auto rep = gram_psd_check(CharFunctional::white_noise(), probes, 1e-10);
            CHECK(rep.is_psd);
            CHECK(rep.min_eigenvalue >= -1e-10);
        }
    }
}

TEST_CASE("characteristic functional invariants across variants") {
    const BasisConfig basis = make_basis(6);
    std::vector<DistributionVector> samples;
    for (std::uint64_t i = 0; i < 64; ++i) samples.push_back(sample_white_noise(basis, 500 + i));
    const std::vector<CharFunctional> variants = {
        CharFunctional::white_noise(),
        CharFunctional::dirac(sample_white_noise(basis, 1)),
        CharFunctional::empirical(samples),
        product_iid_cf(find_innovation("rademacher"), 8, 1e-10),
        product_iid_cf(find_innovation("gaussian"), 8, 1e-10),
        product_iid_cf(find_innovation("uniform"), 8, 1e-10),
    };
    const TestFunction zero(basis, {});
    for (const auto& cf : variants) {
        CAPTURE(cf.name());
        CHECK(cf(zero) == std::complex<double>(1.0, 0.0));
        for (std::uint64_t s = 0; s < 25; ++s) {
            const auto phi = random_primal(basis, 9999 + s);
            const auto v = cf(phi);
            CHECK(std::abs(v) <= 1.0 + 1e-12);
            const auto w = cf(-phi);
            CHECK(std::abs(w - std::conj(v)) <= 1e-12);
        }
    }
}

TEST_CASE("equicontinuity modulus of the white noise family") {
    const BasisConfig basis = make_basis(8);
    const std::vector<CharFunctional> family = {CharFunctional::white_noise()};
    for (double delta : {0.1, 0.5, 1.0}) {
        const auto rep = equicontinuity_modulus(family, basis, 0, delta, 32, 321, 0.01);
        const double expected = 1.0 - std::exp(-0.5 * delta * delta);
        CHECK(std::abs(rep.modulus - expected) <= 1e-10);
        REQUIRE(rep.witness.has_value());
        CHECK(norm_primal(*rep.witness, 0) == doctest::Approx(delta).epsilon(1e-12));
    }
    const auto small = equicontinuity_modulus(family, basis, 0, 0.1, 32, 321, 0.01);
    CHECK(small.verdict == TightnessVerdict::equicontinuous_at_scale);
    CHECK(small.modulus == doctest::Approx(1.0 - std::exp(-0.005)).epsilon(1e-10));
    const auto big = equicontinuity_modulus(family, basis, 0, 1.0, 32, 321, 0.01);
    CHECK(big.verdict == TightnessVerdict::violation);  // 0.39 over an epsilon of 0.01
}

TEST_CASE("modulus is monotone for gaussian-type functionals") {
    const BasisConfig basis = make_basis(8);
    const std::vector<CharFunctional> family = {
        CharFunctional::white_noise(),
        product_iid_cf(find_innovation("gaussian"), 16, 1e-10),
    };
    const std::uint64_t seed = 888;
    double prev = -1.0;
    for (double delta : {0.05, 0.1, 0.2, 0.4, 0.8, 1.6}) {
        const auto rep = equicontinuity_modulus(family, basis, 1, delta, 16, seed, 0.01);
        CHECK(rep.modulus >= prev);
        prev = rep.modulus;
    }
    prev = 3.0;
    for (int m = 0; m <= 4; ++m) {
        const auto rep = equicontinuity_modulus(family, basis, m, 0.5, 16, seed, 0.01);
        CHECK(rep.modulus <= prev);
        prev = rep.modulus;
    }
}

TEST_CASE("drifting dirac family violates equicontinuity at every scale") {
    const BasisConfig basis = make_basis(16);
    std::vector<CharFunctional> family;
    for (int n = 1; n <= 12; ++n) {
        const double c = std::pow(BasisConfig::lambda(n), n);
        family.push_back(CharFunctional::dirac(DistributionVector::basis_vector(basis, n, c)));
    }
    for (int m = 0; m <= 4; ++m) {
        for (double delta : {0.1, 0.5, 1.0}) {
            const auto rep = equicontinuity_modulus(family, basis, m, delta, 64, 555, 0.01);
            CHECK(rep.modulus >= 1.0);
            CHECK(rep.modulus <= 2.0 + 1e-12);
            CHECK(rep.verdict == TightnessVerdict::violation);
        }
    }
}

TEST_CASE("equicontinuity modulus input validation") {
    const BasisConfig basis = make_basis(4);
    const std::vector<CharFunctional> family = {CharFunctional::white_noise()};
    CHECK_THROWS_AS(equicontinuity_modulus({}, basis, 0, 0.1, 8, 1, 0.01),
                    std::invalid_argument);
    CHECK_THROWS_AS(equicontinuity_modulus(family, basis, 0, 0.0, 8, 1, 0.01),
                    std::invalid_argument);
    CHECK_THROWS_AS(equicontinuity_modulus(family, basis, 0, 0.1, 0, 1, 0.01),
                    std::invalid_argument);
    CHECK_THROWS_AS(equicontinuity_modulus(family, basis, -1, 0.1, 8, 1, 0.01),
                    std::invalid_argument);
}
