#include "brodyforge/curves.hpp"

#include "brodyforge/error.hpp"

#include <cmath>

namespace brodyforge {

InnerCurve InnerCurve::diagonal_to_cn(int n) {
    if (n < 2) fail(ErrorKind::validation, "diagonal inner curve needs ambient dimension n >= 2");
    return {Kind::diagonal_to_cn, n};
}

void InnerCurve::eval(cplx w, std::vector<cplx>& out) const {
    out.assign(static_cast<std::size_t>(target_dim()),
               kind == Kind::exp_to_cstar ? std::exp(w) : w);
}

void InnerCurve::eval_deriv(cplx w, std::vector<cplx>& out) const {
    out.assign(static_cast<std::size_t>(target_dim()),
               kind == Kind::exp_to_cstar ? std::exp(w) : cplx(1.0, 0.0));
}

double schedule_kj(int j, const NodeSystem& nodes, const std::vector<cplx>& p_targets,
                   const InnerCurve& inner, const MetricSpec& metric, CurveSpec::Variant variant,
                   double* e1_out, double* e2_out) {
    const cplx& alpha = nodes.alpha(j);
    const cplx& pj = p_targets[static_cast<std::size_t>(j - 1)];

    std::vector<cplx> fp, fdp;
    inner.eval(pj, fp);
    inner.eval_deriv(pj, fdp);

    std::vector<cplx> base(1 + fp.size());
    base[0] = alpha;
    std::copy(fp.begin(), fp.end(), base.begin() + 1);

    cplx first_scale = variant == CurveSpec::Variant::punctured ? alpha : cplx(1.0, 0.0);
    std::vector<cplx> v1(base.size(), cplx(0.0, 0.0));
    for (std::size_t i = 0; i < fdp.size(); ++i) v1[i + 1] = fdp[i] * first_scale;
    std::vector<cplx> v2(base.size(), cplx(0.0, 0.0));
    v2[0] = first_scale;

    double E1 = length(metric, base, v1);
    double E2 = length(metric, base, v2);
    if (!(E1 > 0.0))
        fail(ErrorKind::validation, "degenerate metric direction: E1_" + std::to_string(j) +
                                        " = 0, the derivative schedule is undefined");
    if (e1_out) *e1_out = E1;
    if (e2_out) *e2_out = E2;
    return static_cast<double>(j) * (1.0 / E1 + E2);
}

CurveSpec build_curve(CurveSpec::Variant variant, const InnerCurve& inner, const MetricSpec& metric,
                      const NodeSystem& nodes, std::vector<cplx> p_targets,
                      const CurveTolerances& tol) {
    require_valid_nodes(nodes, tol.tail_bound_max);
    if (metric.dim() != 1 + inner.target_dim())
        fail(ErrorKind::validation, "metric dimension " + std::to_string(metric.dim()) +
                                        " does not match the curve's ambient dimension " +
                                        std::to_string(1 + inner.target_dim()));

    std::size_t J = static_cast<std::size_t>(nodes.count());
    if (p_targets.empty()) {
        p_targets.reserve(J);
        for (std::size_t j = 1; j <= J; ++j) p_targets.emplace_back(static_cast<double>(j), 0.0);
    } else if (p_targets.size() != J) {
        fail(ErrorKind::validation, "p_targets length " + std::to_string(p_targets.size()) +
                                        " does not match node count " + std::to_string(J));
    }

    CurveSpec spec;
    spec.variant = variant;
    spec.inner = inner;
    spec.metric = metric;
    spec.nodes = nodes;
    spec.p_targets = p_targets;
    spec.tol = tol;

    InterpolationTargets targets;
    targets.p = p_targets;
    targets.k.reserve(J);
    spec.k_sched.reserve(J);
    spec.e1.reserve(J);
    spec.e2.reserve(J);
    for (int j = 1; j <= nodes.count(); ++j) {
        double E1 = 0, E2 = 0;
        double kj = schedule_kj(j, nodes, p_targets, inner, metric, variant, &E1, &E2);
        spec.k_sched.push_back(kj);
        spec.e1.push_back(E1);
        spec.e2.push_back(E2);
        targets.k.emplace_back(kj, 0.0);
    }

    InterpolantOptions iopt;
    iopt.tail_bound_max = tol.tail_bound_max;
    spec.interp = build_interpolant(nodes, targets, iopt);

    auto [val_res, der_res] = max_residuals(spec.interp);
    if (!(val_res <= tol.residual_rel) || !(der_res <= tol.residual_rel))
        fail(ErrorKind::tolerance,
             "interpolation residuals exceed " + fmt_double(tol.residual_rel) +
                 " (value " + fmt_double(val_res) + ", derivative " + fmt_double(der_res) + ")");

    spec.q.reserve(J);
    for (int j = 1; j <= nodes.count(); ++j) {
        const cplx& alpha = nodes.alpha(j);
        if (variant == CurveSpec::Variant::plane) {
            spec.q.push_back(alpha);
            continue;
        }
        cplx qj = std::log(alpha); // principal branch
        double err = std::abs(std::exp(qj) - alpha) / std::abs(alpha);
        if (!(err <= tol.qj_roundtrip))
            fail(ErrorKind::tolerance, "exp(Log alpha_" + std::to_string(j) +
                                           ") misses the node by relative " + fmt_double(err));
        spec.q.push_back(qj);
    }

    return spec;
}

namespace {

// Inner argument w = e^z (punctured) or z (plane), with bitwise anchor hits
// transported to the node exactly.
cplx inner_argument(const CurveSpec& spec, cplx z) {
    if (spec.variant == CurveSpec::Variant::plane) return z;
    for (std::size_t j = 0; j < spec.q.size(); ++j)
        if (z == spec.q[j]) return spec.nodes.alphas[j];
    cplx w = std::exp(z);
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag()))
        fail(ErrorKind::overflow, "e^z overflows binary64 at Re z = " + fmt_double(z.real()));
    return w;
}

} // namespace

std::vector<cplx> eval_F(const CurveSpec& spec, cplx z) {
    cplx w = inner_argument(spec, z);
    std::vector<cplx> fx;
    spec.inner.eval(eval_g(spec.interp, w), fx);
    std::vector<cplx> out(1 + fx.size());
    out[0] = w;
    std::copy(fx.begin(), fx.end(), out.begin() + 1);
    if (spec.variant == CurveSpec::Variant::plane) out[0] = z;
    return out;
}

std::vector<cplx> eval_F_tangent(const CurveSpec& spec, cplx z) {
    cplx w = inner_argument(spec, z);
    cplx gw = eval_g(spec.interp, w);
    cplx gpw = eval_g_deriv(spec.interp, w);
    std::vector<cplx> fd;
    spec.inner.eval_deriv(gw, fd);

    std::vector<cplx> out(1 + fd.size());
    if (spec.variant == CurveSpec::Variant::punctured) {
        // F'(z) = (e^z, f'(g(e^z)) g'(e^z) e^z)
        out[0] = w;
        for (std::size_t i = 0; i < fd.size(); ++i) out[i + 1] = fd[i] * gpw * w;
    } else {
        out[0] = cplx(1.0, 0.0);
        for (std::size_t i = 0; i < fd.size(); ++i) out[i + 1] = fd[i] * gpw;
    }
    for (const cplx& x : out)
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
            fail(ErrorKind::overflow, "tangent of F left binary64 range");
    return out;
}

double eval_F_deriv_length(const CurveSpec& spec, cplx z) {
    return length(spec.metric, eval_F(spec, z), eval_F_tangent(spec, z));
}

std::vector<BlowupRow> blowup_table(const CurveSpec& spec) {
    std::vector<BlowupRow> rows;
    rows.reserve(spec.q.size());
    for (int j = 1; j <= spec.nodes.count(); ++j) {
        std::size_t idx = static_cast<std::size_t>(j - 1);
        BlowupRow row;
        row.j = j;
        row.point = spec.q[idx];
        row.length_E = eval_F_deriv_length(spec, row.point);
        row.lower_bound = j * (1.0 + spec.e1[idx] * spec.e2[idx]) - spec.e2[idx];
        row.ratio = row.length_E / j;
        if (!(row.length_E >= row.lower_bound - spec.tol.blowup_rel * (1.0 + row.lower_bound)))
            fail(ErrorKind::tolerance,
                 "tangent length " + fmt_double(row.length_E) + " at j = " + std::to_string(j) +
                     " undershoots its lower bound " + fmt_double(row.lower_bound));
        if (!rows.empty() && !(row.lower_bound > rows.back().lower_bound))
            fail(ErrorKind::tolerance,
                 "lower bounds fail to increase strictly at j = " + std::to_string(j));
        rows.push_back(row);
    }
    return rows;
}

} // namespace brodyforge
