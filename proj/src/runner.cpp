#include "wnk/runner.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <utility>

#include "wnk/charfun.hpp"
#include "wnk/donsker.hpp"
#include "wnk/hermite.hpp"
#include "wnk/hilbert_scale.hpp"
#include "wnk/io.hpp"
#include "wnk/rng.hpp"

namespace wnk {

namespace {

using nlohmann::json;

// Fixed substream tags so each command section sees an independent stream of
// the master seed.
enum : std::uint64_t {
    kStreamMuSamples = 0x01,
    kStreamFubini = 0x02,
    kStreamPsd = 0x03,
    kStreamProbes = 0x04,
    kStreamHemicompact = 0x05,
};

constexpr std::uint64_t kDefaultSeed = 20250809;

template <class T>
T get_or(const json& cfg, const std::string& key, T fallback) {
    if (!cfg.contains(key)) return fallback;
    try {
        return cfg.at(key).get<T>();
    } catch (const json::exception&) {
        throw config_error("config: bad value for '" + key + "'");
    }
}

BasisConfig basis_from_config(const json& cfg, int default_K) {
    int K = default_K;
    int Q = 0;
    if (cfg.contains("basis")) {
        const json& b = cfg.at("basis");
        if (!b.is_object()) throw config_error("config: 'basis' must be an object");
        K = get_or<int>(b, "K", K);
        Q = get_or<int>(b, "Q", 0);
    }
    try {
        return make_basis(K, Q);
    } catch (const std::invalid_argument& e) {
        throw config_error(std::string("config: ") + e.what());
    }
}

// A phi entry is "e<k>", an array of coefficients (length <= K), or
// {"file": <path>} pointing at a coefficient-vector JSON file whose K must
// not exceed the configured basis.
TestFunction parse_phi(const json& spec, const BasisConfig& basis, const std::string& where) {
    if (spec.is_object() && spec.contains("file")) {
        const std::string path = spec.at("file").get<std::string>();
        const TestFunction loaded = test_function_from_json(read_text_file(path));
        if (loaded.dim() > basis.K)
            throw config_error("config: " + where + ": file '" + path + "' has K=" +
                               std::to_string(loaded.dim()) + " > basis K=" +
                               std::to_string(basis.K));
        std::vector<double> coeffs(loaded.coeffs().begin(), loaded.coeffs().end());
        return {basis, std::move(coeffs)};
    }
    if (spec.is_string()) {
        const std::string s = spec.get<std::string>();
        if (s.size() >= 2 && s[0] == 'e') {
            int k = -1;
            const auto res = std::from_chars(s.data() + 1, s.data() + s.size(), k);
            if (res.ec == std::errc() && res.ptr == s.data() + s.size()) {
                if (k < 0 || k >= basis.K)
                    throw config_error("config: " + where + ": '" + s + "' outside basis (K=" +
                                       std::to_string(basis.K) + ")");
                return TestFunction::basis_vector(basis, k);
            }
        }
        throw config_error("config: " + where + ": expected 'e<k>' or coefficient array, got '" +
                           s + "'");
    }
    if (spec.is_array()) {
        std::vector<double> coeffs;
        for (const auto& v : spec) {
            if (!v.is_number()) throw config_error("config: " + where + ": non-numeric coefficient");
            coeffs.push_back(v.get<double>());
        }
        try {
            return {basis, std::move(coeffs)};
        } catch (const std::invalid_argument& e) {
            throw config_error("config: " + where + ": " + e.what());
        }
    }
    throw config_error("config: " + where + ": expected 'e<k>' or coefficient array");
}

std::string phi_id_of(const json& spec, std::size_t index) {
    if (spec.is_string()) return spec.get<std::string>();
    if (spec.is_object() && spec.contains("file") && spec.at("file").is_string())
        return spec.at("file").get<std::string>();
    return "custom_" + std::to_string(index);
}

struct Assertions {
    json report = json::array();
    std::vector<std::string> failures;

    void check(const std::string& name, bool pass, const std::string& detail) {
        report.push_back({{"name", name}, {"pass", pass}, {"detail", detail}});
        if (!pass) failures.push_back(name + ": " + detail);
    }
};

RunOutput finish(const std::string& command, json effective_config, json results,
                 Assertions assertions, std::string table_csv) {
    json report;
    report["command"] = command;
    report["config"] = std::move(effective_config);
    report["results"] = std::move(results);
    report["assertions"] = std::move(assertions.report);
    RunOutput out;
    out.report_json = report.dump(2) + "\n";
    out.table_csv = std::move(table_csv);
    out.failures = std::move(assertions.failures);
    return out;
}

// ---------------------------------------------------------------- donsker

RunOutput run_donsker(const json& cfg) {
    const BasisConfig basis = basis_from_config(cfg, 4);
    const auto seed = get_or<std::uint64_t>(cfg, "seed", kDefaultSeed);
    const std::string inn_name = get_or<std::string>(cfg, "innovation", "rademacher");
    bool known = false;
    for (const auto& inn : builtin_innovations()) known = known || inn.name == inn_name;
    if (!known) throw config_error("config: unknown innovation '" + inn_name + "'");
    const Innovation& inn = find_innovation(inn_name);

    const json phi_specs = cfg.contains("phi") ? cfg.at("phi") : json::array({"e0"});
    if (!phi_specs.is_array() || phi_specs.empty())
        throw config_error("config: 'phi' must be a nonempty array");
    std::vector<TestFunction> phi_set;
    std::vector<std::string> phi_ids;
    for (std::size_t i = 0; i < phi_specs.size(); ++i) {
        phi_set.push_back(parse_phi(phi_specs[i], basis, "phi[" + std::to_string(i) + "]"));
        phi_ids.push_back(phi_id_of(phi_specs[i], i));
    }

    auto n_schedule = get_or<std::vector<int>>(cfg, "n_schedule", {16, 64, 256, 1024});
    if (n_schedule.empty()) throw config_error("config: 'n_schedule' must be nonempty");
    for (std::size_t i = 0; i < n_schedule.size(); ++i) {
        if (n_schedule[i] < 1) throw config_error("config: n_schedule entries must be >= 1");
        if (i > 0 && n_schedule[i] <= n_schedule[i - 1])
            throw config_error("config: n_schedule must be strictly increasing");
    }
    const auto n_mc = get_or<std::int64_t>(cfg, "n_mc", 20000);
    if (n_mc < 1) throw config_error("config: n_mc must be >= 1");
    const double tail_tol = get_or<double>(cfg, "tail_tol", 1e-10);
    if (!(tail_tol > 0.0)) throw config_error("config: tail_tol must be > 0");

    const json acfg = cfg.contains("assert") ? cfg.at("assert") : json::object();
    const bool a_monotone = get_or<bool>(acfg, "monotone_analytic_err", true);
    const double a_final_max = get_or<double>(acfg, "final_analytic_err_max", 1e-3);
    const double a_sigma = get_or<double>(acfg, "mc_sigma", 5.0);

    const ExperimentReport rep =
        convergence_experiment(phi_set, n_schedule, inn, n_mc, seed, tail_tol, phi_ids);

    CsvTable table({"phi_id", "n", "analytic_cf_re", "analytic_cf_im", "wn_cf", "analytic_err",
                    "empirical_err", "N_mc", "seed"});
    json rows = json::array();
    for (const auto& row : rep.rows) {
        table.add_row({row.phi_id, CsvTable::cell(row.n), CsvTable::cell(row.analytic.real()),
                       CsvTable::cell(row.analytic.imag()), CsvTable::cell(row.wn_cf),
                       CsvTable::cell(row.analytic_err), CsvTable::cell(row.emp_vs_analytic),
                       CsvTable::cell(static_cast<std::int64_t>(rep.n_mc)),
                       CsvTable::cell(rep.seed)});
        rows.push_back({{"phi_id", row.phi_id},
                        {"n", row.n},
                        {"analytic_re", row.analytic.real()},
                        {"analytic_im", row.analytic.imag()},
                        {"wn_cf", row.wn_cf},
                        {"analytic_err", row.analytic_err},
                        {"empirical_re", row.empirical.real()},
                        {"empirical_im", row.empirical.imag()},
                        {"emp_vs_analytic", row.emp_vs_analytic},
                        {"emp_vs_wn", row.emp_vs_wn},
                        {"sum_n_a_sq", row.sum_n_a_sq},
                        {"tail_bound", row.tail_bound}});
    }

    Assertions assertions;
    const double mc_tol = a_sigma / std::sqrt(static_cast<double>(n_mc));
    for (std::size_t p = 0; p < phi_ids.size(); ++p) {
        double prev = -1.0;
        bool monotone = true;
        double final_err = 0.0;
        for (const auto& row : rep.rows) {
            if (row.phi_id != phi_ids[p]) continue;
            // Exact zeros (e.g. the zero test function) may repeat.
            if (prev >= 0.0 && row.analytic_err >= prev && row.analytic_err != 0.0)
                monotone = false;
            prev = row.analytic_err;
            final_err = row.analytic_err;
        }
        if (a_monotone)
            assertions.check("monotone_analytic_err[" + phi_ids[p] + "]", monotone,
                             monotone ? "strictly decreasing over the schedule"
                                      : "analytic error failed to decrease");
        assertions.check("final_analytic_err[" + phi_ids[p] + "]", final_err <= a_final_max,
                         fmt_double(final_err) + " vs bound " + fmt_double(a_final_max));
    }
    for (const auto& row : rep.rows)
        assertions.check(
            "empirical_vs_analytic[" + row.phi_id + ",n=" + std::to_string(row.n) + "]",
            row.emp_vs_analytic <= mc_tol, fmt_double(row.emp_vs_analytic) + " vs " +
                                               fmt_double(mc_tol));

    json effective = {{"command", "donsker"},
                      {"basis", {{"K", basis.K}, {"Q", basis.Q}}},
                      {"seed", seed},
                      {"innovation", inn_name},
                      {"phi", phi_specs},
                      {"n_schedule", n_schedule},
                      {"n_mc", n_mc},
                      {"tail_tol", tail_tol},
                      {"assert",
                       {{"monotone_analytic_err", a_monotone},
                        {"final_analytic_err_max", a_final_max},
                        {"mc_sigma", a_sigma}}}};
    return finish("donsker", std::move(effective), {{"rows", rows}}, std::move(assertions),
                  table.str());
}

// -------------------------------------------------------------- tightness

RunOutput run_tightness(const json& cfg) {
    const BasisConfig basis = basis_from_config(cfg, 16);
    const auto seed = get_or<std::uint64_t>(cfg, "seed", kDefaultSeed);
    const int probes = get_or<int>(cfg, "probes", 64);
    if (probes < 1) throw config_error("config: probes must be >= 1");
    const double epsilon = get_or<double>(cfg, "epsilon", 0.01);
    if (!(epsilon > 0.0)) throw config_error("config: epsilon must be > 0");
    auto m_grid = get_or<std::vector<int>>(cfg, "m_grid", {0, 1, 2});
    auto delta_grid = get_or<std::vector<double>>(cfg, "delta_grid", {0.1});
    if (m_grid.empty() || delta_grid.empty())
        throw config_error("config: m_grid and delta_grid must be nonempty");
    for (int m : m_grid)
        if (m < 0) throw config_error("config: m_grid entries must be >= 0");
    for (double d : delta_grid)
        if (!(d > 0.0)) throw config_error("config: delta_grid entries must be > 0");

    const json fam_cfg = cfg.contains("family") ? cfg.at("family") : json{{"kind", "white-noise"}};
    if (!fam_cfg.is_object()) throw config_error("config: 'family' must be an object");
    const std::string kind = get_or<std::string>(fam_cfg, "kind", "white-noise");

    std::vector<CharFunctional> family;
    std::string family_id = kind;
    json family_echo = {{"kind", kind}};
    if (kind == "white-noise") {
        family.push_back(CharFunctional::white_noise());
    } else if (kind == "drifting-dirac") {
        const int n_max = get_or<int>(fam_cfg, "n_max", 12);
        if (n_max < 1) throw config_error("config: family.n_max must be >= 1");
        if (basis.K <= n_max)
            throw config_error("config: drifting-dirac needs K > n_max (K=" +
                               std::to_string(basis.K) + ", n_max=" + std::to_string(n_max) + ")");
        for (int n = 1; n <= n_max; ++n) {
            const double c = std::pow(BasisConfig::lambda(n), n);
            family.push_back(
                CharFunctional::dirac(DistributionVector::basis_vector(basis, n, c)));
        }
        family_echo["n_max"] = n_max;
    } else if (kind == "product-iid") {
        const std::string inn_name = get_or<std::string>(fam_cfg, "innovation", "rademacher");
        bool known = false;
        for (const auto& inn : builtin_innovations()) known = known || inn.name == inn_name;
        if (!known) throw config_error("config: unknown innovation '" + inn_name + "'");
        auto n_values = get_or<std::vector<int>>(fam_cfg, "n_values", {4, 16, 64});
        if (n_values.empty()) throw config_error("config: family.n_values must be nonempty");
        const double tail_tol = get_or<double>(fam_cfg, "tail_tol", 1e-10);
        for (int n : n_values) {
            if (n < 1) throw config_error("config: family.n_values entries must be >= 1");
            family.push_back(product_iid_cf(find_innovation(inn_name), n, tail_tol));
        }
        family_id = "product-iid[" + inn_name + "]";
        family_echo["innovation"] = inn_name;
        family_echo["n_values"] = n_values;
        family_echo["tail_tol"] = tail_tol;
    } else {
        throw config_error("config: unknown family kind '" + kind + "'");
    }
    if (family.empty()) throw config_error("config: empty family");

    const json acfg = cfg.contains("assert") ? cfg.at("assert") : json::object();
    std::optional<std::string> expect;
    if (acfg.contains("expect_verdict")) expect = acfg.at("expect_verdict").get<std::string>();
    if (expect && *expect != "equicontinuous-at-scale" && *expect != "violation")
        throw config_error("config: expect_verdict must be 'equicontinuous-at-scale' or 'violation'");

    CsvTable table({"family_id", "m", "delta", "modulus"});
    json cells = json::array();
    Assertions assertions;
    for (int m : m_grid) {
        for (double delta : delta_grid) {
            const TightnessReport rep = equicontinuity_modulus(
                family, basis, m, delta, probes, derive(seed, kStreamProbes), epsilon);
            table.add_row({family_id, CsvTable::cell(m), CsvTable::cell(delta),
                           CsvTable::cell(rep.modulus)});
            json cell = {{"m", rep.m},
                         {"delta", rep.delta},
                         {"epsilon", rep.epsilon},
                         {"modulus", rep.modulus},
                         {"verdict", to_string(rep.verdict)}};
            if (rep.witness) {
                const auto w = rep.witness->coeffs();
                cell["witness_coeffs"] = std::vector<double>(w.begin(), w.end());
            }
            cells.push_back(std::move(cell));
            if (expect)
                assertions.check(
                    "verdict[m=" + std::to_string(m) + ",delta=" + fmt_double(delta) + "]",
                    to_string(rep.verdict) == *expect,
                    std::string("got ") + to_string(rep.verdict) + ", expected " + *expect);
        }
    }

    json effective = {{"command", "tightness"},
                      {"basis", {{"K", basis.K}, {"Q", basis.Q}}},
                      {"seed", seed},
                      {"family", family_echo},
                      {"m_grid", m_grid},
                      {"delta_grid", delta_grid},
                      {"probes", probes},
                      {"epsilon", epsilon}};
    if (expect) effective["assert"] = {{"expect_verdict", *expect}};
    return finish("tightness", std::move(effective),
                  {{"family_id", family_id}, {"cells", cells}}, std::move(assertions),
                  table.str());
}

// ----------------------------------------------------------------- minlos

RunOutput run_minlos(const json& cfg) {
    const BasisConfig basis = basis_from_config(cfg, 4);
    const auto seed = get_or<std::uint64_t>(cfg, "seed", kDefaultSeed);

    const json dir_specs = cfg.contains("directions") ? cfg.at("directions") : json::array({"e0"});
    if (!dir_specs.is_array() || dir_specs.empty())
        throw config_error("config: 'directions' must be a nonempty array");
    std::vector<TestFunction> directions;
    for (std::size_t i = 0; i < dir_specs.size(); ++i)
        directions.push_back(
            parse_phi(dir_specs[i], basis, "directions[" + std::to_string(i) + "]"));

    const auto n_mu = get_or<std::int64_t>(cfg, "n_mu", 100000);
    const auto n_m = get_or<std::int64_t>(cfg, "n_m", 2000);
    if (n_mu < 2 || n_m < 2) throw config_error("config: n_mu and n_m must be >= 2");
    const double m_tolerance = get_or<double>(cfg, "m_tolerance", 1e-6);
    if (!(m_tolerance > 0.0)) throw config_error("config: m_tolerance must be > 0");

    const json pcfg = cfg.contains("psd") ? cfg.at("psd") : json::object();
    const int psd_probes = get_or<int>(pcfg, "probes", 8);
    const int psd_trials = get_or<int>(pcfg, "trials", 10);
    const double psd_tol = get_or<double>(pcfg, "tol", 1e-10);
    if (psd_probes < 1 || psd_trials < 1 || !(psd_tol >= 0.0))
        throw config_error("config: bad psd block");

    const json acfg = cfg.contains("assert") ? cfg.at("assert") : json::object();
    const double fubini_sigma = get_or<double>(acfg, "fubini_sigma", 5.0);
    auto m_range = get_or<std::vector<double>>(acfg, "m_range", {2.0, 2.0002});
    if (m_range.size() != 2) throw config_error("config: assert.m_range must have 2 entries");
    const bool assert_psd = get_or<bool>(acfg, "psd", true);

    // White-noise samples of the measure under test.
    std::vector<DistributionVector> mu_samples;
    mu_samples.reserve(static_cast<std::size_t>(n_mu));
    const std::uint64_t mu_seed = derive(seed, kStreamMuSamples);
    for (std::int64_t i = 0; i < n_mu; ++i)
        mu_samples.push_back(sample_white_noise(basis, derive(mu_seed, static_cast<std::uint64_t>(i))));

    const FubiniResult fub =
        fubini_check(mu_samples, directions, static_cast<int>(n_m), derive(seed, kStreamFubini));
    const double threshold = fubini_sigma * (fub.se_lhs + fub.se_rhs);
    const double diff = std::abs(fub.lhs - fub.rhs);

    const MConstant mc = m_constant_detail(m_tolerance);

    const CharFunctional wn = CharFunctional::white_noise();
    double psd_min_eig = std::numeric_limits<double>::infinity();
    bool psd_all = true;
    const std::uint64_t psd_seed = derive(seed, kStreamPsd);
    for (int trial = 0; trial < psd_trials; ++trial) {
        std::vector<TestFunction> probes;
        for (int p = 0; p < psd_probes; ++p) {
            CounterRng rng(psd_seed, static_cast<std::uint64_t>(trial) * 65536u +
                                         static_cast<std::uint64_t>(p));
            std::vector<double> c(static_cast<std::size_t>(basis.K));
            for (double& v : c) v = rng.next_normal();
            probes.emplace_back(basis, std::move(c));
        }
        const PsdReport rep = gram_psd_check(wn, probes, psd_tol);
        psd_min_eig = std::min(psd_min_eig, rep.min_eigenvalue);
        psd_all = psd_all && rep.is_psd;
    }

    Assertions assertions;
    assertions.check("fubini_identity", diff <= threshold,
                     "|lhs-rhs| = " + fmt_double(diff) + " vs " + fmt_double(threshold));
    assertions.check("m_constant_range", mc.value >= m_range[0] && mc.value <= m_range[1],
                     "M = " + fmt_double(mc.value) + " vs [" + fmt_double(m_range[0]) + ", " +
                         fmt_double(m_range[1]) + "]");
    if (assert_psd)
        assertions.check("psd", psd_all, "min eigenvalue " + fmt_double(psd_min_eig) +
                                             " vs tolerance -" + fmt_double(psd_tol));

    CsvTable table({"key", "value"});
    table.add_row({"lhs", CsvTable::cell(fub.lhs)});
    table.add_row({"rhs", CsvTable::cell(fub.rhs)});
    table.add_row({"abs_diff", CsvTable::cell(diff)});
    table.add_row({"threshold", CsvTable::cell(threshold)});
    table.add_row({"se_lhs", CsvTable::cell(fub.se_lhs)});
    table.add_row({"se_rhs", CsvTable::cell(fub.se_rhs)});
    table.add_row({"m_value", CsvTable::cell(mc.value)});
    table.add_row({"m_argmax", CsvTable::cell(mc.argmax)});
    table.add_row({"psd_min_eig", CsvTable::cell(psd_min_eig)});
    table.add_row({"n_mu", CsvTable::cell(static_cast<std::int64_t>(n_mu))});
    table.add_row({"n_m", CsvTable::cell(static_cast<std::int64_t>(n_m))});

    json results = {{"fubini",
                     {{"lhs", fub.lhs},
                      {"rhs", fub.rhs},
                      {"abs_diff", diff},
                      {"threshold", threshold},
                      {"se_lhs", fub.se_lhs},
                      {"se_rhs", fub.se_rhs}}},
                    {"m_constant", {{"value", mc.value}, {"argmax", mc.argmax}}},
                    {"psd", {{"all_psd", psd_all}, {"min_eigenvalue", psd_min_eig}}}};
    json effective = {{"command", "minlos"},
                      {"basis", {{"K", basis.K}, {"Q", basis.Q}}},
                      {"seed", seed},
                      {"directions", dir_specs},
                      {"n_mu", n_mu},
                      {"n_m", n_m},
                      {"m_tolerance", m_tolerance},
                      {"psd", {{"probes", psd_probes}, {"trials", psd_trials}, {"tol", psd_tol}}},
                      {"assert",
                       {{"fubini_sigma", fubini_sigma},
                        {"m_range", m_range},
                        {"psd", assert_psd}}}};
    return finish("minlos", std::move(effective), std::move(results), std::move(assertions),
                  table.str());
}

// ------------------------------------------------------------ hemicompact

RunOutput run_hemicompact(const json& cfg) {
    const BasisConfig basis = basis_from_config(cfg, 16);
    const auto seed = get_or<std::uint64_t>(cfg, "seed", kDefaultSeed);
    const auto samples = get_or<std::int64_t>(cfg, "samples", 1000);
    if (samples < 1) throw config_error("config: samples must be >= 1");
    const int n_max = get_or<int>(cfg, "n_max", 16);
    if (n_max < 1) throw config_error("config: n_max must be >= 1");

    const json acfg = cfg.contains("assert") ? cfg.at("assert") : json::object();
    const bool a_finite = get_or<bool>(acfg, "all_finite", true);
    const bool a_nested = get_or<bool>(acfg, "nested", true);

    const std::uint64_t sample_seed = derive(seed, kStreamHemicompact);
    std::map<int, std::int64_t> histogram;
    std::vector<std::int64_t> member_count(static_cast<std::size_t>(n_max) + 1, 0);
    std::int64_t unresolved = 0;
    std::int64_t nesting_violations = 0;
    for (std::int64_t i = 0; i < samples; ++i) {
        const DistributionVector x =
            sample_white_noise(basis, derive(sample_seed, static_cast<std::uint64_t>(i)));
        const auto idx = exhaustion_index(x);
        if (idx)
            ++histogram[*idx];
        else
            ++unresolved;
        bool seen = false;
        for (int n = 1; n <= n_max; ++n) {
            const bool in = ball_contains({n, exhaustion_radius(n)}, x);
            if (in) ++member_count[static_cast<std::size_t>(n)];
            if (seen && !in) ++nesting_violations;
            seen = seen || in;
        }
    }

    Assertions assertions;
    if (a_finite)
        assertions.check("all_finite_index", unresolved == 0,
                         std::to_string(unresolved) + " samples without index (bound " +
                             std::to_string(kExhaustionSearchBound) + ")");
    if (a_nested)
        assertions.check("nested_exhaustion", nesting_violations == 0,
                         std::to_string(nesting_violations) + " membership drops");

    CsvTable table({"n", "r_n", "member_count"});
    for (int n = 1; n <= n_max; ++n)
        table.add_row({CsvTable::cell(n), CsvTable::cell(exhaustion_radius(n)),
                       CsvTable::cell(member_count[static_cast<std::size_t>(n)])});

    json hist = json::object();
    for (const auto& [idx, count] : histogram) hist[std::to_string(idx)] = count;
    json results = {{"samples", samples},
                    {"histogram", hist},
                    {"unresolved", unresolved},
                    {"nesting_violations", nesting_violations}};
    json effective = {{"command", "hemicompact"},
                      {"basis", {{"K", basis.K}, {"Q", basis.Q}}},
                      {"seed", seed},
                      {"samples", samples},
                      {"n_max", n_max},
                      {"assert", {{"all_finite", a_finite}, {"nested", a_nested}}}};
    return finish("hemicompact", std::move(effective), std::move(results), std::move(assertions),
                  table.str());
}

// ----------------------------------------------------------------- tables

RunOutput run_tables(const json& cfg) {
    const BasisConfig basis = basis_from_config(cfg, 8);
    auto gh_orders = get_or<std::vector<int>>(cfg, "gh_orders", {1, 2, 8});
    auto hermite_k = get_or<std::vector<int>>(cfg, "hermite_k", {0, 1, 2, 5});
    auto hermite_t = get_or<std::vector<double>>(cfg, "hermite_t", {0.0, 1.0, 10.0});
    const int embedding_max = get_or<int>(cfg, "embedding_max_level", 4);
    const int exhaustion_n_max = get_or<int>(cfg, "exhaustion_n_max", 8);
    const double m_tolerance = get_or<double>(cfg, "m_tolerance", 1e-6);
    if (embedding_max < 0 || exhaustion_n_max < 1 || !(m_tolerance > 0.0))
        throw config_error("config: bad tables parameters");

    CsvTable table({"table", "a", "b", "value"});
    for (int k : hermite_k)
        for (double t : hermite_t)
            table.add_row({"hermite", CsvTable::cell(k), CsvTable::cell(t),
                           CsvTable::cell(hermite_point(k, t))});
    for (int Q : gh_orders) {
        const GaussHermiteRule rule = gh_rule(Q);
        for (int i = 0; i < Q; ++i) {
            table.add_row({"gh_node", CsvTable::cell(Q), CsvTable::cell(i),
                           CsvTable::cell(rule.nodes[static_cast<std::size_t>(i)])});
            table.add_row({"gh_weight", CsvTable::cell(Q), CsvTable::cell(i),
                           CsvTable::cell(rule.weights[static_cast<std::size_t>(i)])});
        }
    }
    for (int k = 0; k <= embedding_max; ++k)
        for (int n = k; n <= k + 4; ++n)
            table.add_row({"embedding", CsvTable::cell(k), CsvTable::cell(n),
                           CsvTable::cell(embedding_norm(k, n))});
    for (int n = 1; n <= exhaustion_n_max; ++n)
        table.add_row({"exhaustion_radius", CsvTable::cell(n), "",
                       CsvTable::cell(exhaustion_radius(n))});
    const MConstant mc = m_constant_detail(m_tolerance);
    table.add_row({"m_constant", "", "", CsvTable::cell(mc.value)});
    table.add_row({"m_argmax", "", "", CsvTable::cell(mc.argmax)});

    json effective = {{"command", "tables"},
                      {"basis", {{"K", basis.K}, {"Q", basis.Q}}},
                      {"gh_orders", gh_orders},
                      {"hermite_k", hermite_k},
                      {"hermite_t", hermite_t},
                      {"embedding_max_level", embedding_max},
                      {"exhaustion_n_max", exhaustion_n_max},
                      {"m_tolerance", m_tolerance}};
    json results = {{"m_constant", mc.value}, {"m_argmax", mc.argmax}};
    return finish("tables", std::move(effective), std::move(results), Assertions{}, table.str());
}

}  // namespace

RunOutput run_command(const std::string& config_json) {
    json cfg;
    try {
        cfg = json::parse(config_json);
    } catch (const json::exception& e) {
        throw config_error(std::string("config: invalid JSON: ") + e.what());
    }
    if (!cfg.is_object()) throw config_error("config: top level must be a JSON object");
    if (!cfg.contains("command") || !cfg.at("command").is_string())
        throw config_error("config: missing 'command'");
    const std::string command = cfg.at("command").get<std::string>();
    if (command == "donsker") return run_donsker(cfg);
    if (command == "tightness") return run_tightness(cfg);
    if (command == "minlos") return run_minlos(cfg);
    if (command == "hemicompact") return run_hemicompact(cfg);
    if (command == "tables") return run_tables(cfg);
    throw config_error("config: unknown command '" + command + "'");
}

}  // namespace wnk
