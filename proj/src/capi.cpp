#include "brody_forge.h"

#include "brodyforge/config.hpp"
#include "brodyforge/curves.hpp"
#include "brodyforge/error.hpp"
#include "brodyforge/geometry.hpp"
#include "brodyforge/interpolation.hpp"
#include "brodyforge/nodes.hpp"
#include "brodyforge/pipeline.hpp"
#include "brodyforge/products.hpp"

#include <cstdlib>
#include <cstring>

using namespace brodyforge;

struct bf_nodes {
    NodeSystem v;
};
struct bf_metric {
    MetricSpec v;
};
struct bf_interpolant {
    HermiteInterpolant v;
};
struct bf_curve {
    CurveSpec v;
};

namespace {

thread_local std::string g_error_message = "no error";
thread_local std::string g_error_json = "{}";

bf_status status_of(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::validation: return BF_ERR_VALIDATION;
    case ErrorKind::tolerance: return BF_ERR_TOLERANCE;
    case ErrorKind::io: return BF_ERR_IO;
    case ErrorKind::invalid_argument: return BF_ERR_INVALID_ARGUMENT;
    case ErrorKind::overflow: return BF_ERR_OVERFLOW;
    default: return BF_ERR_INTERNAL;
    }
}

bf_status set_error(ErrorKind kind, const std::string& message, const std::string& detail) {
    g_error_message = message;
    json payload{{"kind", to_string(kind)}, {"message", message}};
    if (!detail.empty()) {
        json parsed = json::parse(detail, nullptr, false);
        payload["detail"] = parsed.is_discarded() ? json(detail) : parsed;
    }
    g_error_json = json{{"error", std::move(payload)}}.dump();
    return status_of(kind);
}

template <typename F> bf_status guarded(F&& f) {
    try {
        f();
        return BF_OK;
    } catch (const Error& e) {
        return set_error(e.kind(), e.what(), e.detail_json());
    } catch (const std::bad_alloc&) {
        return set_error(ErrorKind::internal, "out of memory", {});
    } catch (const std::exception& e) {
        return set_error(ErrorKind::internal, e.what(), {});
    } catch (...) {
        return set_error(ErrorKind::internal, "unidentified failure", {});
    }
}

bf_status null_arg(const char* what) {
    return set_error(ErrorKind::invalid_argument, std::string("null pointer passed for ") + what, {});
}

cplx from_c(bf_complex z) { return {z.re, z.im}; }
bf_complex to_c(cplx z) { return {z.real(), z.imag()}; }

std::vector<cplx> from_c(const bf_complex* p, int count) {
    std::vector<cplx> out;
    out.reserve(count > 0 ? static_cast<size_t>(count) : 0);
    for (int i = 0; i < count; ++i) out.push_back(from_c(p[i]));
    return out;
}

CurveTolerances curve_tol(const bf_tolerances* t) {
    CurveTolerances c;
    if (t) {
        c.residual_rel = t->residual_rel;
        c.qj_roundtrip = t->qj_roundtrip;
        c.blowup_rel = t->blowup_rel;
        c.tail_bound_max = t->tail_bound_max;
    }
    return c;
}

bf_status run_common(const char* command, json config, const char* out_dir, const char* format,
                     const char* const* tol_keys, const double* tol_values, int tol_count,
                     char** summary_json_out) {
    return guarded([&] {
        RunRequest req;
        req.command = parse_command(command ? command : "");
        req.config = std::move(config);
        req.out_dir = out_dir ? out_dir : "";
        req.format = parse_format(format && *format ? format : "csv");
        for (int i = 0; i < tol_count; ++i) {
            if (!tol_keys || !tol_keys[i] || !tol_values)
                fail(ErrorKind::invalid_argument, "tolerance override arrays are malformed");
            req.tol_overrides[tol_keys[i]] = tol_values[i];
        }
        RunResult result = run_command(req);
        if (summary_json_out) {
            json s{{"summary", result.summary}, {"files", result.files_written}};
            std::string text = s.dump();
            char* buf = static_cast<char*>(std::malloc(text.size() + 1));
            if (!buf) fail(ErrorKind::internal, "out of memory");
            std::memcpy(buf, text.c_str(), text.size() + 1);
            *summary_json_out = buf;
        }
    });
}

} // namespace

extern "C" {

const char* bf_version(void) { return BF_VERSION; }

const char* bf_status_name(bf_status status) {
    switch (status) {
    case BF_OK: return "ok";
    case BF_ERR_VALIDATION: return "validation";
    case BF_ERR_TOLERANCE: return "tolerance";
    case BF_ERR_IO: return "io";
    case BF_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case BF_ERR_OVERFLOW: return "overflow";
    default: return "internal";
    }
}

const char* bf_last_error_message(void) { return g_error_message.c_str(); }
const char* bf_last_error_json(void) { return g_error_json.c_str(); }

void bf_tolerances_default(bf_tolerances* out) {
    if (!out) return;
    Tolerances t;
    *out = {t.residual_rel, t.qj_roundtrip, t.blowup_rel, t.tail_bound_max,
            t.rescale_dev,  t.jrho_tol,     t.logderiv_tol, t.chain_rel};
}

/* ---- node systems -------------------------------------------------- */

bf_status bf_nodes_geometric(double r, double rho, int j_max, bf_nodes** out) {
    if (!out) return null_arg("out");
    return guarded([&] { *out = new bf_nodes{NodeSystem::geometric(r, rho, j_max)}; });
}

bf_status bf_nodes_explicit(const bf_complex* points, int count, bf_nodes** out) {
    if (!out) return null_arg("out");
    if (!points && count > 0) return null_arg("points");
    return guarded([&] { *out = new bf_nodes{NodeSystem::explicit_list(from_c(points, count))}; });
}

void bf_nodes_free(bf_nodes* nodes) { delete nodes; }

int bf_nodes_count(const bf_nodes* nodes) { return nodes ? nodes->v.count() : 0; }

bf_status bf_nodes_validate(const bf_nodes* nodes, double tail_bound_max) {
    if (!nodes) return null_arg("nodes");
    return guarded([&] { require_valid_nodes(nodes->v, tail_bound_max); });
}

/* ---- squared-factor products ---------------------------------------- */

bf_status bf_eval_h(const bf_nodes* nodes, bf_complex z, bf_complex* out) {
    if (!nodes) return null_arg("nodes");
    if (!out) return null_arg("out");
    return guarded([&] { *out = to_c(eval_h(nodes->v, from_c(z))); });
}

bf_status bf_eval_h_log(const bf_nodes* nodes, bf_complex z, double* log_mag, double* phase) {
    if (!nodes) return null_arg("nodes");
    if (!log_mag || !phase) return null_arg("log_mag/phase");
    return guarded([&] {
        LogComplex v = eval_h_log(nodes->v, from_c(z));
        *log_mag = v.log_mag;
        *phase = v.phase;
    });
}

bf_status bf_eval_h_deriv(const bf_nodes* nodes, bf_complex z, bf_complex* out) {
    if (!nodes) return null_arg("nodes");
    if (!out) return null_arg("out");
    return guarded([&] { *out = to_c(eval_h_deriv(nodes->v, from_c(z))); });
}

/* ---- convergence classifier ------------------------------------------ */

bf_status bf_lemma1_classify(const double* c, int count, bf_verdict* verdict, double* partial_sums,
                             double* partial_products_plus, double* partial_products_minus) {
    if (!c) return null_arg("c");
    if (!verdict) return null_arg("verdict");
    return guarded([&] {
        std::vector<double> terms(c, c + (count > 0 ? count : 0));
        ConvergenceReport rep = lemma1_classify(terms);
        switch (rep.verdict) {
        case Verdict::both_converge: *verdict = BF_BOTH_CONVERGE; break;
        case Verdict::both_diverge: *verdict = BF_BOTH_DIVERGE; break;
        default: *verdict = BF_INCONSISTENT; break;
        }
        for (int i = 0; i < count; ++i) {
            if (partial_sums) partial_sums[i] = rep.partial_sums[i];
            if (partial_products_plus) partial_products_plus[i] = rep.partial_products_plus[i];
            if (partial_products_minus) partial_products_minus[i] = rep.partial_products_minus[i];
        }
    });
}

/* ---- metrics --------------------------------------------------------- */

bf_status bf_metric_euclidean(int n, bf_metric** out) {
    if (!out) return null_arg("out");
    return guarded([&] { *out = new bf_metric{MetricSpec::euclidean(n)}; });
}

bf_status bf_metric_fs_p2(bf_metric** out) {
    if (!out) return null_arg("out");
    return guarded([&] { *out = new bf_metric{MetricSpec::fs_p2()}; });
}

void bf_metric_free(bf_metric* metric) { delete metric; }

bf_status bf_metric_length(const bf_metric* metric, const bf_complex* base, const bf_complex* v,
                           int dim, double* out) {
    if (!metric) return null_arg("metric");
    if (!base || !v) return null_arg("base/v");
    if (!out) return null_arg("out");
    return guarded([&] { *out = length(metric->v, from_c(base, dim), from_c(v, dim)); });
}

/* ---- interpolants ----------------------------------------------------- */

bf_status bf_interpolant_build(const bf_nodes* nodes, const bf_complex* p, const bf_complex* k,
                               int count, bf_interpolant** out) {
    if (!nodes) return null_arg("nodes");
    if (!p || !k) return null_arg("p/k");
    if (!out) return null_arg("out");
    return guarded([&] {
        InterpolationTargets targets{from_c(p, count), from_c(k, count)};
        *out = new bf_interpolant{build_interpolant(nodes->v, targets)};
    });
}

void bf_interpolant_free(bf_interpolant* interp) { delete interp; }

bf_status bf_interpolant_eval(const bf_interpolant* interp, bf_complex z, bf_complex* out) {
    if (!interp) return null_arg("interp");
    if (!out) return null_arg("out");
    return guarded([&] { *out = to_c(eval_g(interp->v, from_c(z))); });
}

bf_status bf_interpolant_eval_deriv(const bf_interpolant* interp, bf_complex z, bf_complex* out) {
    if (!interp) return null_arg("interp");
    if (!out) return null_arg("out");
    return guarded([&] { *out = to_c(eval_g_deriv(interp->v, from_c(z))); });
}

bf_status bf_interpolant_residuals(const bf_interpolant* interp, double* val_res, double* der_res) {
    if (!interp) return null_arg("interp");
    if (!val_res || !der_res) return null_arg("val_res/der_res");
    return guarded([&] {
        auto [v, d] = max_residuals(interp->v);
        *val_res = v;
        *der_res = d;
    });
}

/* ---- curves ------------------------------------------------------------ */

bf_status bf_curve_build(bf_variant variant, bf_inner_kind inner, int inner_n,
                         const bf_metric* metric, const bf_nodes* nodes,
                         const bf_complex* p_targets, int p_count, const bf_tolerances* tol,
                         bf_curve** out) {
    if (!metric) return null_arg("metric");
    if (!nodes) return null_arg("nodes");
    if (!out) return null_arg("out");
    return guarded([&] {
        InnerCurve ic;
        switch (inner) {
        case BF_INNER_EXP_TO_CSTAR: ic = InnerCurve::exp_to_cstar(); break;
        case BF_INNER_IDENTITY_TO_C: ic = InnerCurve::identity_to_c(); break;
        case BF_INNER_DIAGONAL_TO_CN: ic = InnerCurve::diagonal_to_cn(inner_n); break;
        default: fail(ErrorKind::invalid_argument, "unknown inner curve kind");
        }
        CurveSpec::Variant var = variant == BF_VARIANT_PUNCTURED ? CurveSpec::Variant::punctured
                                                                 : CurveSpec::Variant::plane;
        std::vector<cplx> p = p_targets ? from_c(p_targets, p_count) : std::vector<cplx>{};
        *out = new bf_curve{build_curve(var, ic, metric->v, nodes->v, std::move(p), curve_tol(tol))};
    });
}

void bf_curve_free(bf_curve* curve) { delete curve; }

int bf_curve_ambient_dim(const bf_curve* curve) { return curve ? curve->v.ambient_dim() : 0; }

bf_status bf_curve_eval_F(const bf_curve* curve, bf_complex z, bf_complex* out) {
    if (!curve) return null_arg("curve");
    if (!out) return null_arg("out");
    return guarded([&] {
        std::vector<cplx> v = eval_F(curve->v, from_c(z));
        for (size_t i = 0; i < v.size(); ++i) out[i] = to_c(v[i]);
    });
}

bf_status bf_curve_eval_F_tangent(const bf_curve* curve, bf_complex z, bf_complex* out) {
    if (!curve) return null_arg("curve");
    if (!out) return null_arg("out");
    return guarded([&] {
        std::vector<cplx> v = eval_F_tangent(curve->v, from_c(z));
        for (size_t i = 0; i < v.size(); ++i) out[i] = to_c(v[i]);
    });
}

bf_status bf_curve_deriv_length(const bf_curve* curve, bf_complex z, double* out) {
    if (!curve) return null_arg("curve");
    if (!out) return null_arg("out");
    return guarded([&] { *out = eval_F_deriv_length(curve->v, from_c(z)); });
}

bf_status bf_curve_eval_g(const bf_curve* curve, bf_complex z, bf_complex* out) {
    if (!curve) return null_arg("curve");
    if (!out) return null_arg("out");
    return guarded([&] { *out = to_c(eval_g(curve->v.interp, from_c(z))); });
}

bf_status bf_curve_eval_g_deriv(const bf_curve* curve, bf_complex z, bf_complex* out) {
    if (!curve) return null_arg("curve");
    if (!out) return null_arg("out");
    return guarded([&] { *out = to_c(eval_g_deriv(curve->v.interp, from_c(z))); });
}

bf_status bf_curve_blowup(const bf_curve* curve, int count, bf_complex* points, double* length_E,
                          double* lower_bound, double* ratio) {
    if (!curve) return null_arg("curve");
    return guarded([&] {
        std::vector<BlowupRow> rows = blowup_table(curve->v);
        if (count < static_cast<int>(rows.size()))
            fail(ErrorKind::invalid_argument,
                 "output arrays hold " + std::to_string(count) + " rows, need " +
                     std::to_string(rows.size()));
        for (size_t i = 0; i < rows.size(); ++i) {
            if (points) points[i] = to_c(rows[i].point);
            if (length_E) length_E[i] = rows[i].length_E;
            if (lower_bound) lower_bound[i] = rows[i].lower_bound;
            if (ratio) ratio[i] = rows[i].ratio;
        }
    });
}

/* ---- pipelines ----------------------------------------------------------- */

bf_status bf_run_command_json(const char* command, const char* config_json, const char* out_dir,
                              const char* format, const char* const* tol_keys,
                              const double* tol_values, int tol_count, char** summary_json_out) {
    if (!config_json) return null_arg("config_json");
    json config = json::parse(config_json, nullptr, false);
    if (config.is_discarded())
        return set_error(ErrorKind::validation, "config text is not valid JSON", {});
    return run_common(command, std::move(config), out_dir, format, tol_keys, tol_values, tol_count,
                      summary_json_out);
}

bf_status bf_run_command_file(const char* command, const char* config_path, const char* out_dir,
                              const char* format, const char* const* tol_keys,
                              const double* tol_values, int tol_count, char** summary_json_out) {
    if (!config_path) return null_arg("config_path");
    json config;
    bf_status rc = guarded([&] { config = load_json_file(config_path); });
    if (rc != BF_OK) return rc;
    return run_common(command, std::move(config), out_dir, format, tol_keys, tol_values, tol_count,
                      summary_json_out);
}

void bf_string_free(char* s) { std::free(s); }

} // extern "C"
