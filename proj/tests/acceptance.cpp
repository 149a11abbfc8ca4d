// Acceptance suite: one line per criterion, PASS/FAIL plus wall time, exit
// status equals the number of failed criteria. Criterion 11 drives the CLI
// binary (path injected at build time via WNK_CLI_PATH).

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "wnk/charfun.hpp"
#include "wnk/donsker.hpp"
#include "wnk/hermite.hpp"
#include "wnk/hilbert_scale.hpp"
#include "wnk/rng.hpp"

using namespace wnk;

namespace {

struct criterion_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
    if (!ok) throw criterion_failure(what);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

TestFunction random_primal(const BasisConfig& basis, std::uint64_t seed) {
    CounterRng rng(seed);
    std::vector<double> c(static_cast<std::size_t>(basis.K));
    for (double& v : c) v = rng.next_normal();
    return {basis, std::move(c)};
}

DistributionVector random_dual(const BasisConfig& basis, std::uint64_t seed, double scale) {
    CounterRng rng(seed);
    std::vector<double> c(static_cast<std::size_t>(basis.K));
    for (double& v : c) v = scale * rng.next_normal();
    return {basis, std::move(c)};
}

// Criterion 1: product functional converges to the white noise functional,
// strictly decreasing error over the schedule, at most 1e-3 at n = 1024.
std::vector<std::pair<double, double>> g_c1_errors;

void criterion_donsker_convergence() {
    const BasisConfig basis = make_basis(4);
    const auto e0 = TestFunction::basis_vector(basis, 0);
    const auto& rad = find_innovation("rademacher");
    const double wn = white_noise_cf(e0).real();
    g_c1_errors.clear();
    double prev = std::numeric_limits<double>::infinity();
    for (int n : {16, 64, 256, 1024}) {
        const double err = std::abs(product_cf(e0, n, rad, 1e-10) - std::complex<double>(wn, 0.0));
        require(err < prev, "error not strictly decreasing at n=" + std::to_string(n) + " (" +
                                fmt(err) + " vs " + fmt(prev) + ")");
        prev = err;
        g_c1_errors.emplace_back(static_cast<double>(n), err);
    }
    require(g_c1_errors.back().second <= 1e-3,
            "error at n=1024 is " + fmt(g_c1_errors.back().second) + " > 1e-3");
}

// Criterion 2: log-log slope of the criterion-1 error sequence.
void criterion_rate() {
    require(!g_c1_errors.empty(), "criterion 1 must run first");
    const double slope = rate_estimate(g_c1_errors);
    require(slope <= -0.8, "slope " + fmt(slope) + " > -0.8");
}

// Criterion 3: gaussian innovations give the exact closed form, and the
// cell-averaging defect halves (at least) when n doubles.
void criterion_gaussian_closed_form() {
    const BasisConfig basis = make_basis(4);
    const auto& gau = find_innovation("gaussian");
    for (const auto& phi :
         {TestFunction::basis_vector(basis, 0), TestFunction(basis, {1.0, 0.0, 1.0})}) {
        const double norm_sq = l2_norm_sq(phi);
        double defect64 = 0.0, defect128 = 0.0;
        for (int n : {64, 128}) {
            const auto cells = cell_averages(phi, n, 1e-12);
            const auto prod = product_cf(cells, gau);
            const double closed = std::exp(-0.5 * cells.sum_n_a_sq());
            require(std::abs(prod - std::complex<double>(closed, 0.0)) <= 1e-12,
                    "closed-form deviation " +
                        fmt(std::abs(prod - std::complex<double>(closed, 0.0))) + " at n=" +
                        std::to_string(n));
            const double defect = std::abs(norm_sq - cells.sum_n_a_sq());
            (n == 64 ? defect64 : defect128) = defect;
        }
        require(defect64 >= 2.0 * defect128, "defect ratio " + fmt(defect64 / defect128) + " < 2");
    }
}

// Criterion 4: empirical functional within 5/sqrt(N) of the analytic
// product at N = 1e5 for all three innovations and two test functions.
void criterion_empirical_vs_analytic() {
    const BasisConfig basis = make_basis(4);
    const std::int64_t N = 100000;
    const int n = 64;
    const std::uint64_t seed = 0xACCE5501;
    const double tol = 5.0 / std::sqrt(static_cast<double>(N));
    for (const auto& phi :
         {TestFunction::basis_vector(basis, 0), TestFunction(basis, {1.0, 0.0, 1.0})}) {
        const auto cells = cell_averages(phi, n, 1e-10);
        for (const auto& inn : builtin_innovations()) {
            const auto analytic = product_cf(cells, inn);
            const auto empirical = empirical_product_cf(cells, inn, N, seed);
            const double dist = std::abs(empirical - analytic);
            require(dist <= tol, inn.name + ": |empirical - analytic| = " + fmt(dist) + " > " +
                                     fmt(tol));
        }
    }
}

// Criterion 5: white-noise modulus matches 1 - exp(-delta^2/2) to 1e-10;
// the drifting point-mass family is flagged at every scanned scale.
void criterion_equicontinuity() {
    const BasisConfig basis = make_basis(16);
    const std::vector<CharFunctional> wn_family = {CharFunctional::white_noise()};
    for (double delta : {0.1, 0.5, 1.0}) {
        const auto rep = equicontinuity_modulus(wn_family, basis, 0, delta, 64, 97, 0.01);
        const double expected = 1.0 - std::exp(-0.5 * delta * delta);
        require(std::abs(rep.modulus - expected) <= 1e-10,
                "white-noise modulus off by " + fmt(std::abs(rep.modulus - expected)) +
                    " at delta=" + fmt(delta));
    }
    std::vector<CharFunctional> drifting;
    for (int n = 1; n <= 12; ++n)
        drifting.push_back(CharFunctional::dirac(DistributionVector::basis_vector(
            basis, n, std::pow(BasisConfig::lambda(n), n))));
    for (int m = 0; m <= 4; ++m) {
        for (double delta : {0.1, 0.5, 1.0}) {
            const auto rep = equicontinuity_modulus(drifting, basis, m, delta, 64, 97, 0.01);
            require(rep.verdict == TightnessVerdict::violation,
                    "drifting family not flagged at m=" + std::to_string(m) +
                        ", delta=" + fmt(delta) + " (modulus " + fmt(rep.modulus) + ")");
        }
    }
}

// Criterion 6: both sides of the exchange-of-integrals identity agree, and
// the left side matches 1 - 3^{-1/2}.
void criterion_fubini() {
    const BasisConfig basis = make_basis(4);
    const std::vector<TestFunction> dirs = {TestFunction::basis_vector(basis, 0)};
    const int N = 100000;
    std::vector<DistributionVector> samples;
    samples.reserve(N);
    const std::uint64_t seed = 0xF0B1;
    for (int i = 0; i < N; ++i)
        samples.push_back(sample_white_noise(basis, derive(seed, static_cast<std::uint64_t>(i))));
    const auto r = fubini_check(samples, dirs, 2000, 0xF0B2);
    const double expected = 1.0 - 1.0 / std::sqrt(3.0);
    require(std::abs(r.lhs - expected) <= 5.0 * r.se_lhs,
            "lhs " + fmt(r.lhs) + " vs " + fmt(expected) + " (5 se = " + fmt(5.0 * r.se_lhs) +
                ")");
    require(std::abs(r.lhs - r.rhs) <= 5.0 * (r.se_lhs + r.se_rhs),
            "|lhs-rhs| = " + fmt(std::abs(r.lhs - r.rhs)) + " > " +
                fmt(5.0 * (r.se_lhs + r.se_rhs)));
}

// Criterion 7: the constant M.
void criterion_m_constant() {
    const MConstant mc = m_constant_detail(1e-9);
    require(mc.value >= 2.0000 && mc.value <= 2.0002, "M = " + fmt(mc.value));
    require(std::abs(mc.argmax - std::numbers::pi) <= 0.05,
            "argmax " + fmt(mc.argmax) + " not near pi");
    require(std::abs(m_ratio(0.0) - 0.5) <= 1e-9, "limit at 0 is " + fmt(m_ratio(0.0)));
    require(std::abs(m_ratio(1e-12) - 0.5) <= 1e-9,
            "value just off 0 is " + fmt(m_ratio(1e-12)));
}

// Criterion 8: norm contraction, embedding norm by coordinate scan, and the
// duality bound.
void criterion_hilbert_scale() {
    const BasisConfig basis = make_basis(16);
    for (std::uint64_t s = 0; s < 1000; ++s) {
        const auto x = random_dual(basis, 0x8C0 + s, s % 7 == 0 ? 50.0 : 1.0);
        for (int n = 0; n <= 4; ++n)
            require(norm_dual(x, n + 2) <= 0.25 * norm_dual(x, n),
                    "contraction violated at sample " + std::to_string(s) + ", n=" +
                        std::to_string(n));
    }
    for (int k = 0; k <= 4; ++k) {
        const auto sv = embedding_singular_values(k, k + 2, basis.K);
        double brute = 0.0;
        for (double v : sv) brute = std::max(brute, v);
        require(embedding_norm(k, k + 2) == 0.25 && brute == 0.25,
                "embedding norm at (k, k+2) is not 0.25");
    }
    for (std::uint64_t s = 0; s < 1000; ++s) {
        const auto x = random_dual(basis, 0xD00 + s, 1.0);
        const auto phi = random_primal(basis, 0xD11 + s);
        const double p = std::abs(pairing(x, phi));
        for (int level = 0; level <= 6; ++level)
            require(p <= norm_dual(x, level) * norm_primal(phi, level) * (1.0 + 1e-12),
                    "duality bound violated at level " + std::to_string(level));
    }
}

// Criterion 9: nested exhaustion with r_n = n, finite indices, and the
// reference case 100 e0 -> 5.
void criterion_hemicompact() {
    const BasisConfig basis = make_basis(16);
    for (std::uint64_t s = 0; s < 1000; ++s) {
        const auto x = random_dual(basis, 0x93C0 + s, 5.0);
        require(exhaustion_index(x).has_value(), "sample without finite index");
        bool seen = false;
        for (int n = 1; n <= 24; ++n) {
            const bool in = ball_contains({n, exhaustion_radius(n)}, x);
            require(!(seen && !in), "membership dropped at n=" + std::to_string(n));
            seen = seen || in;
        }
    }
    const auto idx = exhaustion_index(DistributionVector::basis_vector(basis, 0, 100.0));
    require(idx.has_value() && *idx == 5, "index of 100 e0 is not 5");
}

// Criterion 10: Gram matrices of the white noise functional are PSD.
void criterion_psd() {
    const BasisConfig basis = make_basis(8);
    const CharFunctional wn = CharFunctional::white_noise();
    for (std::uint64_t trial = 0; trial < 100; ++trial) {
        std::vector<TestFunction> probes;
        for (std::uint64_t p = 0; p < 16; ++p)
            probes.push_back(random_primal(basis, derive(0x95D + trial, p)));
        const auto rep = gram_psd_check(wn, probes, 1e-10);
        require(rep.is_psd, "trial " + std::to_string(trial) + ": min eigenvalue " +
                                fmt(rep.min_eigenvalue));
    }
}

// Criterion 11: the CLI run twice with the same config yields byte-identical
// CSV output, independent of WNK_THREADS in {1, 4}.
void criterion_reproducibility() {
#ifndef WNK_CLI_PATH
    require(false, "CLI path not configured");
#else
    namespace fs = std::filesystem;
    const fs::path root = fs::temp_directory_path() / "wnk_acceptance";
    fs::remove_all(root);
    fs::create_directories(root);
    const fs::path cfg_path = root / "donsker.json";
    {
        std::ofstream cfg(cfg_path);
        cfg << R"({"command":"donsker","basis":{"K":4,"Q":64},"seed":20250809,)"
            << R"("innovation":"rademacher","phi":["e0"],"n_schedule":[16,64],"n_mc":5000})";
    }
    auto run_cli = [&](int threads, const std::string& tag) {
        const fs::path out = root / tag;
        std::ostringstream cmd;
        cmd << "WNK_THREADS=" << threads << " " << WNK_CLI_PATH << " donsker --config "
            << cfg_path << " --out " << out << " > " << (root / (tag + ".log")) << " 2>&1";
        const int rc = std::system(cmd.str().c_str());
        require(rc != -1 && WEXITSTATUS(rc) == 0,
                tag + ": CLI exited with status " + std::to_string(WEXITSTATUS(rc)));
        std::ifstream in(out / "table.csv", std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        require(!ss.str().empty(), tag + ": empty table.csv");
        return ss.str();
    };
    const std::string a = run_cli(1, "run1");
    const std::string b = run_cli(1, "run2");
    const std::string c = run_cli(4, "run4");
    require(a == b, "re-run changed the CSV bytes");
    require(a == c, "WNK_THREADS=4 changed the CSV bytes");
    fs::remove_all(root);
#endif
}

struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    std::function<void()> fn;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "donsker convergence (rademacher, e0)", 10.0, criterion_donsker_convergence},
        {2, "rate sanity (log-log slope <= -0.8)", 1.0, criterion_rate},
        {3, "gaussian closed form + defect halving", 5.0, criterion_gaussian_closed_form},
        {4, "empirical vs analytic functional at N=1e5", 60.0, criterion_empirical_vs_analytic},
        {5, "equicontinuity modulus (white noise + drifting dirac)", 5.0,
         criterion_equicontinuity},
        {6, "fubini identity at N=1e5", 30.0, criterion_fubini},
        {7, "M constant", 1.0, criterion_m_constant},
        {8, "hilbert scale: contraction, embedding, duality", 5.0, criterion_hilbert_scale},
        {9, "hemicompact exhaustion", 2.0, criterion_hemicompact},
        {10, "PSD Gram matrices over 100 trials", 10.0, criterion_psd},
        {11, "CLI reproducibility across threads", 30.0, criterion_reproducibility},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        std::string message;
        bool ok = true;
        try {
            c.fn();
        } catch (const std::exception& e) {
            ok = false;
            message = e.what();
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (ok && elapsed > c.budget_seconds) {
            ok = false;
            message = "runtime " + fmt(elapsed) + "s over budget " + fmt(c.budget_seconds) + "s";
        }
        std::printf("%s  criterion %2d  %-55s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", c.id, c.name,
                    elapsed, message.empty() ? "" : "  -- ", message.c_str());
        std::fflush(stdout);
        if (!ok) ++failed;
    }
    if (failed == 0)
        std::printf("acceptance: all %zu criteria passed\n", criteria.size());
    else
        std::printf("acceptance: %d of %zu criteria FAILED\n", failed, criteria.size());
    return failed;
}
