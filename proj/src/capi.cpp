// extern-C shims over the C++ core: opaque handles, error codes, and a
// thread-local error message. Exceptions never cross this boundary.

#include "wnk.h"

#include <algorithm>
#include <cstring>
#include <exception>
#include <new>
#include <stdexcept>
#include <string>
#include <vector>

#include "wnk/basis.hpp"
#include "wnk/charfun.hpp"
#include "wnk/donsker.hpp"
#include "wnk/hermite.hpp"
#include "wnk/hilbert_scale.hpp"
#include "wnk/io.hpp"
#include "wnk/runner.hpp"

struct wnk_basis {
    wnk::BasisConfig cfg;
};
struct wnk_test_function {
    wnk::TestFunction fn;
};
struct wnk_distribution {
    wnk::DistributionVector vec;
};
struct wnk_run_result {
    wnk::RunOutput out;
};

namespace {

thread_local std::string t_last_error;

void set_error(const char* what) { t_last_error = what ? what : "unknown error"; }

wnk_status classify(const std::exception& e) {
    set_error(e.what());
    if (dynamic_cast<const wnk::config_error*>(&e)) return WNK_ERR_CONFIG;
    if (dynamic_cast<const wnk::io_error*>(&e)) return WNK_ERR_IO;
    if (dynamic_cast<const std::out_of_range*>(&e)) return WNK_ERR_RANGE;
    if (dynamic_cast<const std::range_error*>(&e)) return WNK_ERR_RANGE;
    if (const auto* inv = dynamic_cast<const std::invalid_argument*>(&e)) {
        if (std::strstr(inv->what(), "mismatch") != nullptr) return WNK_ERR_BASIS_MISMATCH;
        return WNK_ERR_INVALID_ARGUMENT;
    }
    return WNK_ERR_INTERNAL;
}

template <class F>
wnk_status guarded(F&& f) noexcept {
    try {
        f();
        return WNK_OK;
    } catch (const std::bad_alloc&) {
        set_error("out of memory");
        return WNK_ERR_INTERNAL;
    } catch (const std::exception& e) {
        return classify(e);
    } catch (...) {
        set_error("unknown error");
        return WNK_ERR_INTERNAL;
    }
}

wnk_status require(bool ok, const char* message) {
    if (ok) return WNK_OK;
    set_error(message);
    return WNK_ERR_INVALID_ARGUMENT;
}

std::vector<wnk::DistributionVector> collect(const wnk_distribution* const* items, size_t count) {
    std::vector<wnk::DistributionVector> out;
    out.reserve(count);
    for (size_t i = 0; i < count; ++i) {
        if (!items[i]) throw std::invalid_argument("null distribution in list");
        out.push_back(items[i]->vec);
    }
    return out;
}

std::vector<wnk::TestFunction> collect(const wnk_test_function* const* items, size_t count) {
    std::vector<wnk::TestFunction> out;
    out.reserve(count);
    for (size_t i = 0; i < count; ++i) {
        if (!items[i]) throw std::invalid_argument("null test function in list");
        out.push_back(items[i]->fn);
    }
    return out;
}

}  // namespace

extern "C" {

const char* wnk_version(void) { return "0.1.0"; }

const char* wnk_last_error(void) { return t_last_error.c_str(); }

const char* wnk_status_name(wnk_status status) {
    switch (status) {
        case WNK_OK: return "ok";
        case WNK_ERR_INVALID_ARGUMENT: return "invalid argument";
        case WNK_ERR_RANGE: return "range error";
        case WNK_ERR_BASIS_MISMATCH: return "basis mismatch";
        case WNK_ERR_CONFIG: return "configuration error";
        case WNK_ERR_IO: return "io error";
        case WNK_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

wnk_status wnk_basis_create(int32_t K, int32_t Q, wnk_basis** out) {
    if (wnk_status s = require(out != nullptr, "wnk_basis_create: out is null")) return s;
    return guarded([&] { *out = new wnk_basis{wnk::make_basis(K, Q)}; });
}

void wnk_basis_free(wnk_basis* basis) { delete basis; }

int32_t wnk_basis_truncation(const wnk_basis* basis) { return basis ? basis->cfg.K : 0; }

int32_t wnk_basis_quadrature_order(const wnk_basis* basis) { return basis ? basis->cfg.Q : 0; }

wnk_status wnk_hermite_point(int32_t k, double t, double* out) {
    if (wnk_status s = require(out != nullptr, "wnk_hermite_point: out is null")) return s;
    return guarded([&] { *out = wnk::hermite_point(k, t); });
}

wnk_status wnk_gh_rule(int32_t Q, double* nodes, double* weights) {
    return guarded([&] {
        const wnk::GaussHermiteRule rule = wnk::gh_rule(Q);
        if (nodes)
            std::memcpy(nodes, rule.nodes.data(), sizeof(double) * rule.nodes.size());
        if (weights)
            std::memcpy(weights, rule.weights.data(), sizeof(double) * rule.weights.size());
    });
}

wnk_status wnk_test_function_create(const wnk_basis* basis, const double* coeffs, size_t len,
                                    wnk_test_function** out) {
    if (wnk_status s = require(basis && out && (coeffs || len == 0),
                               "wnk_test_function_create: null argument"))
        return s;
    return guarded([&] {
        std::vector<double> c(coeffs, coeffs + len);
        *out = new wnk_test_function{wnk::TestFunction(basis->cfg, std::move(c))};
    });
}

void wnk_test_function_free(wnk_test_function* phi) { delete phi; }

int32_t wnk_test_function_dim(const wnk_test_function* phi) { return phi ? phi->fn.dim() : 0; }

wnk_status wnk_test_function_coeffs(const wnk_test_function* phi, double* out, size_t len) {
    if (wnk_status s = require(phi && out, "wnk_test_function_coeffs: null argument")) return s;
    const auto c = phi->fn.coeffs();
    const size_t n = std::min(len, c.size());
    std::memcpy(out, c.data(), sizeof(double) * n);
    return WNK_OK;
}

wnk_status wnk_distribution_create(const wnk_basis* basis, const double* coeffs, size_t len,
                                   wnk_distribution** out) {
    if (wnk_status s = require(basis && out && (coeffs || len == 0),
                               "wnk_distribution_create: null argument"))
        return s;
    return guarded([&] {
        std::vector<double> c(coeffs, coeffs + len);
        *out = new wnk_distribution{wnk::DistributionVector(basis->cfg, std::move(c))};
    });
}

void wnk_distribution_free(wnk_distribution* x) { delete x; }

int32_t wnk_distribution_dim(const wnk_distribution* x) { return x ? x->vec.dim() : 0; }

wnk_status wnk_distribution_coeffs(const wnk_distribution* x, double* out, size_t len) {
    if (wnk_status s = require(x && out, "wnk_distribution_coeffs: null argument")) return s;
    const auto c = x->vec.coeffs();
    const size_t n = std::min(len, c.size());
    std::memcpy(out, c.data(), sizeof(double) * n);
    return WNK_OK;
}

wnk_status wnk_project(wnk_real_fn f, void* ctx, const wnk_basis* basis,
                       wnk_test_function** out) {
    if (wnk_status s = require(f && basis && out, "wnk_project: null argument")) return s;
    return guarded([&] {
        auto wrapped = [f, ctx](double t) { return f(t, ctx); };
        *out = new wnk_test_function{wnk::project(wrapped, basis->cfg)};
    });
}

wnk_status wnk_test_function_eval(const wnk_test_function* phi, double t, double* out) {
    if (wnk_status s = require(phi && out, "wnk_test_function_eval: null argument")) return s;
    return guarded([&] { *out = wnk::eval(phi->fn, t); });
}

wnk_status wnk_l2_norm_sq(const wnk_test_function* phi, double* out) {
    if (wnk_status s = require(phi && out, "wnk_l2_norm_sq: null argument")) return s;
    return guarded([&] { *out = wnk::l2_norm_sq(phi->fn); });
}

wnk_status wnk_test_function_save(const wnk_test_function* phi, const char* path) {
    if (wnk_status s = require(phi && path, "wnk_test_function_save: null argument")) return s;
    return guarded([&] { wnk::write_text_file(path, wnk::test_function_to_json(phi->fn) + "\n"); });
}

wnk_status wnk_test_function_load(const char* path, int32_t Q, wnk_test_function** out) {
    if (wnk_status s = require(path && out, "wnk_test_function_load: null argument")) return s;
    return guarded([&] {
        *out = new wnk_test_function{
            wnk::test_function_from_json(wnk::read_text_file(path), Q > 0 ? Q : 0)};
    });
}

wnk_status wnk_distribution_save(const wnk_distribution* x, const char* path) {
    if (wnk_status s = require(x && path, "wnk_distribution_save: null argument")) return s;
    return guarded([&] { wnk::write_text_file(path, wnk::distribution_to_json(x->vec) + "\n"); });
}

wnk_status wnk_distribution_load(const char* path, int32_t Q, wnk_distribution** out) {
    if (wnk_status s = require(path && out, "wnk_distribution_load: null argument")) return s;
    return guarded([&] {
        *out = new wnk_distribution{
            wnk::distribution_from_json(wnk::read_text_file(path), Q > 0 ? Q : 0)};
    });
}

wnk_status wnk_norm_primal(const wnk_test_function* phi, int32_t p, double* out) {
    if (wnk_status s = require(phi && out, "wnk_norm_primal: null argument")) return s;
    return guarded([&] { *out = wnk::norm_primal(phi->fn, p); });
}

wnk_status wnk_norm_dual(const wnk_distribution* x, int32_t p, double* out) {
    if (wnk_status s = require(x && out, "wnk_norm_dual: null argument")) return s;
    return guarded([&] { *out = wnk::norm_dual(x->vec, p); });
}

wnk_status wnk_pairing(const wnk_distribution* x, const wnk_test_function* phi, double* out) {
    if (wnk_status s = require(x && phi && out, "wnk_pairing: null argument")) return s;
    return guarded([&] { *out = wnk::pairing(x->vec, phi->fn); });
}

wnk_status wnk_ball_contains(int32_t level, double radius, const wnk_distribution* x,
                             int32_t* out) {
    if (wnk_status s = require(x && out, "wnk_ball_contains: null argument")) return s;
    return guarded([&] { *out = wnk::ball_contains({level, radius}, x->vec) ? 1 : 0; });
}

wnk_status wnk_embedding_norm(int32_t k, int32_t n, double* out) {
    if (wnk_status s = require(out != nullptr, "wnk_embedding_norm: out is null")) return s;
    return guarded([&] { *out = wnk::embedding_norm(k, n); });
}

wnk_status wnk_exhaustion_radius(int32_t n, double* out) {
    if (wnk_status s = require(out != nullptr, "wnk_exhaustion_radius: out is null")) return s;
    return guarded([&] { *out = wnk::exhaustion_radius(n); });
}

wnk_status wnk_exhaustion_index(const wnk_distribution* x, int32_t search_bound, int32_t* out) {
    if (wnk_status s = require(x && out, "wnk_exhaustion_index: null argument")) return s;
    return guarded([&] {
        const auto idx = wnk::exhaustion_index(
            x->vec, search_bound > 0 ? search_bound : wnk::kExhaustionSearchBound);
        *out = idx ? *idx : 0;
    });
}

wnk_status wnk_bound_witness(const wnk_distribution* const* family, size_t count, int32_t m,
                             double* out) {
    if (wnk_status s = require(family && out, "wnk_bound_witness: null argument")) return s;
    return guarded([&] {
        const auto items = collect(family, count);
        *out = wnk::bound_witness(items, m);
    });
}

wnk_status wnk_white_noise_cf(const wnk_test_function* phi, double* re, double* im) {
    if (wnk_status s = require(phi && re && im, "wnk_white_noise_cf: null argument")) return s;
    return guarded([&] {
        const auto v = wnk::white_noise_cf(phi->fn);
        *re = v.real();
        *im = v.imag();
    });
}

wnk_status wnk_dirac_cf(const wnk_distribution* x, const wnk_test_function* phi, double* re,
                        double* im) {
    if (wnk_status s = require(x && phi && re && im, "wnk_dirac_cf: null argument")) return s;
    return guarded([&] {
        const auto v = wnk::dirac_cf(x->vec, phi->fn);
        *re = v.real();
        *im = v.imag();
    });
}

wnk_status wnk_empirical_cf(const wnk_distribution* const* samples, size_t count,
                            const wnk_test_function* phi, double* re, double* im) {
    if (wnk_status s = require(samples && phi && re && im, "wnk_empirical_cf: null argument"))
        return s;
    return guarded([&] {
        const auto items = collect(samples, count);
        const auto v = wnk::empirical_cf(items, phi->fn);
        *re = v.real();
        *im = v.imag();
    });
}

wnk_status wnk_sample_white_noise(const wnk_basis* basis, uint64_t seed, wnk_distribution** out) {
    if (wnk_status s = require(basis && out, "wnk_sample_white_noise: null argument")) return s;
    return guarded([&] {
        *out = new wnk_distribution{wnk::sample_white_noise(basis->cfg, seed)};
    });
}

wnk_status wnk_gaussian_mixture_f(const wnk_test_function* const* directions, size_t count,
                                  const wnk_distribution* x, double* out) {
    if (wnk_status s = require((directions || count == 0) && x && out,
                               "wnk_gaussian_mixture_f: null argument"))
        return s;
    return guarded([&] {
        const auto dirs = collect(directions, count);
        *out = wnk::gaussian_mixture_F(dirs, x->vec);
    });
}

wnk_status wnk_finite_rank_gaussian_sample(const wnk_test_function* const* directions,
                                           size_t count, uint64_t seed, wnk_test_function** out) {
    if (wnk_status s =
            require(directions && out, "wnk_finite_rank_gaussian_sample: null argument"))
        return s;
    return guarded([&] {
        const auto dirs = collect(directions, count);
        *out = new wnk_test_function{wnk::finite_rank_gaussian_sample(dirs, seed)};
    });
}

wnk_status wnk_fubini_check(const wnk_distribution* const* mu_samples, size_t mu_count,
                            const wnk_test_function* const* directions, size_t dir_count,
                            int32_t n_m, uint64_t seed, double* lhs, double* rhs, double* se_lhs,
                            double* se_rhs) {
    if (wnk_status s = require(mu_samples && directions && lhs && rhs && se_lhs && se_rhs,
                               "wnk_fubini_check: null argument"))
        return s;
    return guarded([&] {
        const auto samples = collect(mu_samples, mu_count);
        const auto dirs = collect(directions, dir_count);
        const wnk::FubiniResult r = wnk::fubini_check(samples, dirs, n_m, seed);
        *lhs = r.lhs;
        *rhs = r.rhs;
        *se_lhs = r.se_lhs;
        *se_rhs = r.se_rhs;
    });
}

wnk_status wnk_m_constant(double tolerance, double* value, double* argmax) {
    if (wnk_status s = require(value != nullptr, "wnk_m_constant: value is null")) return s;
    return guarded([&] {
        const wnk::MConstant mc = wnk::m_constant_detail(tolerance);
        *value = mc.value;
        if (argmax) *argmax = mc.argmax;
    });
}

wnk_status wnk_product_cf(const wnk_test_function* phi, int32_t n, const char* innovation,
                          double tail_tol, double* re, double* im) {
    if (wnk_status s = require(phi && innovation && re && im, "wnk_product_cf: null argument"))
        return s;
    return guarded([&] {
        const auto v = wnk::product_cf(phi->fn, n, wnk::find_innovation(innovation), tail_tol);
        *re = v.real();
        *im = v.imag();
    });
}

wnk_status wnk_sample_pairing(const wnk_test_function* phi, int32_t n, const char* innovation,
                              uint64_t seed, double tail_tol, double* out) {
    if (wnk_status s = require(phi && innovation && out, "wnk_sample_pairing: null argument"))
        return s;
    return guarded([&] {
        *out = wnk::sample_pairing(phi->fn, n, wnk::find_innovation(innovation), seed, tail_tol);
    });
}

wnk_status wnk_rate_estimate(const double* n_values, const double* errors, size_t count,
                             double* slope) {
    if (wnk_status s =
            require(n_values && errors && slope, "wnk_rate_estimate: null argument"))
        return s;
    return guarded([&] {
        std::vector<std::pair<double, double>> pts;
        pts.reserve(count);
        for (size_t i = 0; i < count; ++i) pts.emplace_back(n_values[i], errors[i]);
        *slope = wnk::rate_estimate(pts);
    });
}

wnk_status wnk_run(const char* config_json, wnk_run_result** out) {
    if (wnk_status s = require(config_json && out, "wnk_run: null argument")) return s;
    return guarded([&] { *out = new wnk_run_result{wnk::run_command(config_json)}; });
}

const char* wnk_run_report_json(const wnk_run_result* result) {
    return result ? result->out.report_json.c_str() : "";
}

const char* wnk_run_table_csv(const wnk_run_result* result) {
    return result ? result->out.table_csv.c_str() : "";
}

size_t wnk_run_failure_count(const wnk_run_result* result) {
    return result ? result->out.failures.size() : 0;
}

const char* wnk_run_failure(const wnk_run_result* result, size_t index) {
    if (!result || index >= result->out.failures.size()) return nullptr;
    return result->out.failures[index].c_str();
}

void wnk_run_result_free(wnk_run_result* result) { delete result; }

}  // extern "C"
