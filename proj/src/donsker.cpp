#include "wnk/donsker.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "wnk/hermite.hpp"
#include "wnk/parallel.hpp"

namespace wnk {

namespace {

constexpr double kSqrt3 = 1.7320508075688772935;

// 8-point Gauss-Legendre rule on [-1, 1].
constexpr double kGl8Nodes[8] = {
    -0.96028985649753623168, -0.79666647741362673959, -0.52553240991632898582,
    -0.18343464249564980494, 0.18343464249564980494,  0.52553240991632898582,
    0.79666647741362673959,  0.96028985649753623168,
};
constexpr double kGl8Weights[8] = {
    0.10122853629037625915, 0.22238103445337447054, 0.31370664587788728734,
    0.36268378337836198297, 0.36268378337836198297, 0.31370664587788728734,
    0.22238103445337447054, 0.10122853629037625915,
};

// Half-width beyond which no window is allowed to grow.
constexpr double kWindowCap = 48.0;

// Certified bound on integral of phi^2 over |t| >= T, valid for T past the
// largest Hermite zero in the truncated span: each |e_k(t)| is bounded by
// |e_k(T)| (t/T)^(K-1) exp(-(t^2-T^2)/2) there, which integrates to
// env(T)^2 / gamma per side with gamma = 2T - (2K-2)/T.
double tail_integral_bound(const TestFunction& phi, double T) {
    const int K = phi.basis().K;
    std::vector<double> ek(static_cast<std::size_t>(K));
    hermite_values(T, ek);
    double env = 0.0;
    const auto c = phi.coeffs();
    for (int k = 0; k < K; ++k) env += std::abs(c[static_cast<std::size_t>(k)]) * std::abs(ek[static_cast<std::size_t>(k)]);
    const double gamma = 2.0 * T - (2.0 * K - 2.0) / T;
    if (!(gamma > 0.0)) return std::numeric_limits<double>::infinity();
    return 2.0 * env * env / gamma;
}

}  // namespace

std::complex<double> Innovation::cf(double u) const {
    switch (kind) {
        case InnovationKind::rademacher:
            return {std::cos(u), 0.0};
        case InnovationKind::gaussian:
            return {std::exp(-0.5 * u * u), 0.0};
        case InnovationKind::uniform: {
            const double x = kSqrt3 * u;
            return {x == 0.0 ? 1.0 : std::sin(x) / x, 0.0};
        }
    }
    return {1.0, 0.0};
}

double Innovation::draw(CounterRng& rng) const {
    switch (kind) {
        case InnovationKind::rademacher:
            return rng.next_unit() <= 0.5 ? -1.0 : 1.0;
        case InnovationKind::gaussian:
            return rng.next_normal();
        case InnovationKind::uniform:
            return rng.next_uniform(-kSqrt3, kSqrt3);
    }
    return 0.0;
}

const std::vector<Innovation>& builtin_innovations() {
    static const std::vector<Innovation> laws = {
        {InnovationKind::rademacher, "rademacher", 1.0, 1.0},
        {InnovationKind::gaussian, "gaussian", 1.0, 3.0},
        {InnovationKind::uniform, "uniform", 1.0, 1.8},
    };
    return laws;
}

const Innovation& find_innovation(std::string_view name) {
    for (const auto& inn : builtin_innovations())
        if (inn.name == name) return inn;
    throw std::invalid_argument("unknown innovation: " + std::string(name));
}

double CellAverages::sum_n_a_sq() const {
    double s = 0.0;
    for (double a : values) s += a * a;
    return s * n;
}

CellAverages cell_averages(const TestFunction& phi, int n, double tail_tol) {
    if (n < 1) throw std::invalid_argument("cell_averages: n must be >= 1");
    if (!(tail_tol > 0.0)) throw std::invalid_argument("cell_averages: tail_tol must be > 0");

    const int K = phi.basis().K;
    // Start past every Hermite zero in the span (largest is below
    // sqrt(2K+1)) so the envelope bound applies.
    double T = std::max(std::sqrt(2.0 * K + 1.0) + 1.0, 4.0);
    if (T > kWindowCap)
        throw std::invalid_argument("cell_averages: basis too large for the window cap");
    double bound = tail_integral_bound(phi, T);
    while (bound > tail_tol) {
        T += 0.5;
        if (T > kWindowCap)
            throw std::invalid_argument(
                "cell_averages: tail_tol unattainable within the window cap");
        bound = tail_integral_bound(phi, T);
    }

    CellAverages cells;
    cells.n = n;
    cells.tail_bound = bound;
    cells.j_min = -static_cast<std::int64_t>(std::ceil(T * n));
    cells.j_max = static_cast<std::int64_t>(std::ceil(T * n)) - 1;
    cells.values.resize(static_cast<std::size_t>(cells.j_max - cells.j_min + 1));

    const double h = 1.0 / n;
    for (std::int64_t j = cells.j_min; j <= cells.j_max; ++j) {
        const double lo = j * h;
        const double mid = lo + 0.5 * h;
        double acc = 0.0;
        for (int q = 0; q < 8; ++q) acc += kGl8Weights[q] * eval(phi, mid + 0.5 * h * kGl8Nodes[q]);
        cells.values[static_cast<std::size_t>(j - cells.j_min)] = 0.5 * h * acc;
    }
    return cells;
}

std::complex<double> product_cf(const CellAverages& cells, const Innovation& inn) {
    const double sqrt_n = std::sqrt(static_cast<double>(cells.n));
    std::complex<double> mantissa(1.0, 0.0);
    double log_scale = 0.0;
    for (double a : cells.values) {
        mantissa *= inn.cf(sqrt_n * a);
        const double mag = std::abs(mantissa);
        if (mag == 0.0) return {0.0, 0.0};
        if (mag < 1e-150 || mag > 1e150) {
            log_scale += std::log(mag);
            mantissa /= mag;
        }
    }
    if (log_scale == 0.0) return mantissa;
    return mantissa * std::exp(log_scale);
}

std::complex<double> product_cf(const TestFunction& phi, int n, const Innovation& inn,
                                double tail_tol) {
    return product_cf(cell_averages(phi, n, tail_tol), inn);
}

double sample_pairing(const CellAverages& cells, const Innovation& inn, std::uint64_t seed) {
    const double sqrt_n = std::sqrt(static_cast<double>(cells.n));
    double s = 0.0;
    for (std::int64_t j = cells.j_min; j <= cells.j_max; ++j) {
        const double a = cells.value(j);
        if (a == 0.0) continue;
        CounterRng rng(seed, static_cast<std::uint64_t>(j));
        s += sqrt_n * inn.draw(rng) * a;
    }
    return s;
}

double sample_pairing(const TestFunction& phi, int n, const Innovation& inn, std::uint64_t seed,
                      double tail_tol) {
    return sample_pairing(cell_averages(phi, n, tail_tol), inn, seed);
}

std::complex<double> empirical_product_cf(const CellAverages& cells, const Innovation& inn,
                                          std::int64_t n_mc, std::uint64_t seed) {
    if (n_mc < 1) throw std::invalid_argument("empirical_product_cf: n_mc must be >= 1");
    std::vector<std::complex<double>> vals(static_cast<std::size_t>(n_mc));
    parallel_for(n_mc, [&](std::int64_t r) {
        const double s = sample_pairing(cells, inn, derive(seed, static_cast<std::uint64_t>(r)));
        vals[static_cast<std::size_t>(r)] = std::polar(1.0, s);
    });
    std::complex<double> acc(0.0, 0.0);
    for (const auto& v : vals) acc += v;
    return acc / static_cast<double>(n_mc);
}

ExperimentReport convergence_experiment(std::span<const TestFunction> phi_set,
                                        std::span<const int> n_schedule, const Innovation& inn,
                                        std::int64_t n_mc, std::uint64_t seed, double tail_tol,
                                        std::span<const std::string> phi_ids) {
    if (phi_set.empty()) throw std::invalid_argument("convergence_experiment: empty phi set");
    if (n_schedule.empty()) throw std::invalid_argument("convergence_experiment: empty schedule");
    for (std::size_t i = 1; i < n_schedule.size(); ++i)
        if (n_schedule[i] <= n_schedule[i - 1])
            throw std::invalid_argument("convergence_experiment: schedule must be increasing");
    if (n_mc < 1) throw std::invalid_argument("convergence_experiment: n_mc must be >= 1");
    if (!phi_ids.empty() && phi_ids.size() != phi_set.size())
        throw std::invalid_argument("convergence_experiment: phi id count mismatch");

    ExperimentReport report;
    report.innovation = inn.name;
    report.basis = phi_set.front().basis();
    report.n_schedule.assign(n_schedule.begin(), n_schedule.end());
    report.n_mc = n_mc;
    report.seed = seed;
    report.tail_tol = tail_tol;
    for (std::size_t i = 0; i < phi_set.size(); ++i)
        report.phi_ids.push_back(phi_ids.empty() ? "phi_" + std::to_string(i)
                                                 : phi_ids[i]);

    for (std::size_t i = 0; i < phi_set.size(); ++i) {
        const TestFunction& phi = phi_set[i];
        const double wn = white_noise_cf(phi).real();
        for (int n : n_schedule) {
            const CellAverages cells = cell_averages(phi, n, tail_tol);
            ExperimentRow row;
            row.phi_id = report.phi_ids[i];
            row.n = n;
            row.analytic = product_cf(cells, inn);
            row.wn_cf = wn;
            row.analytic_err = std::abs(row.analytic - std::complex<double>(wn, 0.0));
            row.empirical = empirical_product_cf(cells, inn, n_mc, seed);
            row.emp_vs_analytic = std::abs(row.empirical - row.analytic);
            row.emp_vs_wn = std::abs(row.empirical - std::complex<double>(wn, 0.0));
            row.sum_n_a_sq = cells.sum_n_a_sq();
            row.tail_bound = cells.tail_bound;
            report.rows.push_back(std::move(row));
        }
    }
    return report;
}

CharFunctional product_iid_cf(const Innovation& inn, int n, double tail_tol) {
    if (n < 1) throw std::invalid_argument("product_iid_cf: n must be >= 1");
    if (!(tail_tol > 0.0)) throw std::invalid_argument("product_iid_cf: tail_tol must be > 0");
    std::string name = "product_iid[" + inn.name + ",n=" + std::to_string(n) + "]";
    return {std::move(name), [inn, n, tail_tol](const TestFunction& phi) {
                return product_cf(phi, n, inn, tail_tol);
            }};
}

double rate_estimate(std::span<const std::pair<double, double>> errors) {
    if (errors.size() < 3) throw std::invalid_argument("rate_estimate: need at least 3 points");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& [n, err] : errors) {
        if (!(n > 0.0)) throw std::invalid_argument("rate_estimate: nonpositive n");
        if (!(err > 0.0)) throw std::invalid_argument("rate_estimate: nonpositive error");
        const double x = std::log(n);
        const double y = std::log(err);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double m = static_cast<double>(errors.size());
    const double denom = m * sxx - sx * sx;
    if (denom == 0.0) throw std::invalid_argument("rate_estimate: degenerate abscissae");
    return (m * sxy - sx * sy) / denom;
}

}  // namespace wnk
