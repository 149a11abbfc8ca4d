#ifndef WNK_DONSKER_HPP
#define WNK_DONSKER_HPP

// The invariance-principle engine: iid innovation laws, cell averages of a
// test function over the dyadic-in-n grid, the exact product characteristic
// functional of the scaled step process, Monte-Carlo sampling of its pairing
// with a test function, and convergence tables against the white noise
// limit.

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wnk/basis.hpp"
#include "wnk/charfun.hpp"
#include "wnk/rng.hpp"

namespace wnk {

enum class InnovationKind { rademacher, gaussian, uniform };

// An iid driving law with mean 0 and variance 1: a seeded sampler plus its
// scalar characteristic function C(u).
struct Innovation {
    InnovationKind kind = InnovationKind::rademacher;
    std::string name;
    double moment2 = 1.0;
    double moment4 = 1.0;

    std::complex<double> cf(double u) const;
    double draw(CounterRng& rng) const;
};

const std::vector<Innovation>& builtin_innovations();

// Lookup by name ("rademacher", "gaussian", "uniform"); throws
// std::invalid_argument with an "unknown innovation" message otherwise.
const Innovation& find_innovation(std::string_view name);

// a_j = integral of phi over [j/n, (j+1)/n] for j in [j_min, j_max]. The
// window is chosen from the Hermite-envelope tail bound of phi so that the
// discarded contribution to sum_j n a_j^2 is at most tail_tol; tail_bound
// records the certified bound actually achieved.
struct CellAverages {
    int n = 1;
    std::int64_t j_min = 0;
    std::int64_t j_max = -1;
    std::vector<double> values;
    double tail_bound = 0.0;

    double value(std::int64_t j) const { return values[static_cast<std::size_t>(j - j_min)]; }
    double sum_n_a_sq() const;
};

CellAverages cell_averages(const TestFunction& phi, int n, double tail_tol);

// prod_j C(sqrt(n) a_j) over the window. Factors can be negative or zero
// (cos), so the running product keeps an exact complex mantissa and
// renormalizes magnitude into a separate exponent only when it leaves
// [1e-150, 1e150].
std::complex<double> product_cf(const CellAverages& cells, const Innovation& inn);
std::complex<double> product_cf(const TestFunction& phi, int n, const Innovation& inn,
                                double tail_tol);

// One Monte-Carlo draw of <X^(n), phi> = sum_j sqrt(n) xi_j a_j. The xi_j
// stream is keyed by (seed, j) with the absolute cell index j, so windows of
// different sizes reuse identical innovation values.
double sample_pairing(const CellAverages& cells, const Innovation& inn, std::uint64_t seed);
double sample_pairing(const TestFunction& phi, int n, const Innovation& inn, std::uint64_t seed,
                      double tail_tol);

// Mean of exp(i sample_pairing) over n_mc replicates with per-replicate
// substreams derived from seed; deterministic and independent of the worker
// count.
std::complex<double> empirical_product_cf(const CellAverages& cells, const Innovation& inn,
                                          std::int64_t n_mc, std::uint64_t seed);

struct ExperimentRow {
    std::string phi_id;
    int n = 1;
    std::complex<double> analytic;    // product functional
    double wn_cf = 0.0;               // white noise value at phi (real)
    double analytic_err = 0.0;        // |analytic - wn_cf|
    std::complex<double> empirical;   // Monte-Carlo estimate
    double emp_vs_analytic = 0.0;
    double emp_vs_wn = 0.0;
    double sum_n_a_sq = 0.0;
    double tail_bound = 0.0;
};

struct ExperimentReport {
    std::string innovation;
    BasisConfig basis;
    std::vector<int> n_schedule;
    std::int64_t n_mc = 0;
    std::uint64_t seed = 0;
    double tail_tol = 0.0;
    std::vector<std::string> phi_ids;
    std::vector<ExperimentRow> rows;
};

// For each (phi, n): the analytic product functional, its distance to the
// white noise limit, and the empirical functional from n_mc draws with its
// distance to both. Replicate substreams are shared across the schedule, so
// comparisons across n see identical innovations.
ExperimentReport convergence_experiment(std::span<const TestFunction> phi_set,
                                        std::span<const int> n_schedule, const Innovation& inn,
                                        std::int64_t n_mc, std::uint64_t seed, double tail_tol,
                                        std::span<const std::string> phi_ids = {});

// Least-squares slope of log err against log n; requires >= 3 points with
// positive errors.
double rate_estimate(std::span<const std::pair<double, double>> errors);

// The law of <X^(n), .> as a characteristic functional, for use in
// tightness scans alongside the analytic variants.
CharFunctional product_iid_cf(const Innovation& inn, int n, double tail_tol);

}  // namespace wnk

#endif
