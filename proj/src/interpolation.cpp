#include "brodyforge/interpolation.hpp"

#include "brodyforge/error.hpp"

#include <algorithm>
#include <cmath>

namespace brodyforge {

namespace {

LogComplex alpha_sq_log(const cplx& alpha) {
    LogComplex a = LogComplex::from(alpha);
    return lc_mul(a, a);
}

void check_finite(const LogComplex& v, const char* what, int j) {
    if (std::isnan(v.log_mag) || (std::isinf(v.log_mag) && v.log_mag > 0))
        fail(ErrorKind::internal,
             std::string("non-finite intermediate while building coefficient ") + what + "_" +
                 std::to_string(j));
}

// Sup of log|term_j| on a 16-point ring at the evaluation-domain boundary;
// used by the decay guard.
double term_log_sup_on_ring(const HermiteInterpolant& interp, int j, double radius) {
    double sup = -std::numeric_limits<double>::infinity();
    for (int s = 0; s < 16; ++s) {
        double th = 2.0 * pi * s / 16.0;
        cplx z = radius * cplx(std::cos(th), std::sin(th));
        LogComplex h = eval_H_excl(interp.nodes, j, z);
        LogComplex lin = lc_add(interp.coeff_a[static_cast<std::size_t>(j - 1)],
                                lc_mul(interp.coeff_b[static_cast<std::size_t>(j - 1)],
                                       LogComplex::from(z - interp.nodes.alpha(j))));
        LogComplex term = lc_div(lc_mul(h, lin), alpha_sq_log(interp.nodes.alpha(j)));
        sup = std::max(sup, term.log_mag);
    }
    return sup;
}

} // namespace

HermiteInterpolant build_interpolant(const NodeSystem& nodes, const InterpolationTargets& targets,
                                     const InterpolantOptions& opt) {
    require_valid_nodes(nodes, opt.tail_bound_max);
    std::size_t J = static_cast<std::size_t>(nodes.count());
    if (targets.p.size() != J || targets.k.size() != J)
        fail(ErrorKind::validation,
             "targets length (" + std::to_string(targets.p.size()) + " values, " +
                 std::to_string(targets.k.size()) + " derivatives) does not match node count " +
                 std::to_string(J));
    for (std::size_t i = 0; i < J; ++i)
        if (!std::isfinite(targets.p[i].real()) || !std::isfinite(targets.p[i].imag()) ||
            !std::isfinite(targets.k[i].real()) || !std::isfinite(targets.k[i].imag()))
            fail(ErrorKind::validation, "non-finite target at index " + std::to_string(i + 1));

    HermiteInterpolant out;
    out.nodes = nodes;
    out.targets = targets;
    out.coeff_a.resize(J);
    out.coeff_b.resize(J);
    out.h_at_node.resize(J);
    out.lambda_at_node.resize(J);

    for (int j = 1; j <= nodes.count(); ++j) {
        std::size_t idx = static_cast<std::size_t>(j - 1);
        const cplx& alpha = nodes.alpha(j);
        LogComplex h = eval_H_excl(nodes, j, alpha);
        if (h.is_zero())
            fail(ErrorKind::internal, "deleted product vanished at its own node " + std::to_string(j));
        cplx lambda = eval_H_excl_logderiv(nodes, j, alpha);
        LogComplex asq = alpha_sq_log(alpha);

        LogComplex a = lc_div(lc_mul(LogComplex::from(targets.p[idx]), asq), h);
        // b_j H_j = k_j alpha_j^2 - a_j H_j lambda_j
        LogComplex num = lc_add(lc_mul(LogComplex::from(targets.k[idx]), asq),
                                lc_neg(lc_mul(lc_mul(a, h), LogComplex::from(lambda))));
        LogComplex b = lc_div(num, h);
        check_finite(a, "a", j);
        check_finite(b, "b", j);

        out.coeff_a[idx] = a;
        out.coeff_b[idx] = b;
        out.h_at_node[idx] = h;
        out.lambda_at_node[idx] = lambda;
    }

    // Reject target growth the truncated basis cannot absorb: beyond the guard
    // index, per-term magnitudes on the domain boundary must fall off.
    if (nodes.count() > opt.decay_guard_from + 1) {
        double radius = std::abs(nodes.alphas.back());
        if (nodes.kind == NodeSystem::Kind::geometric) radius *= nodes.rho;
        double prev = term_log_sup_on_ring(out, opt.decay_guard_from + 1, radius);
        for (int j = opt.decay_guard_from + 2; j <= nodes.count(); ++j) {
            double cur = term_log_sup_on_ring(out, j, radius);
            if (!(cur <= prev))
                fail(ErrorKind::validation,
                     "interpolant terms fail to decay beyond index " +
                         std::to_string(opt.decay_guard_from) + ": sup log|term_" +
                         std::to_string(j) + "| = " + fmt_double(cur) + " exceeds " +
                         fmt_double(prev) + " on the evaluation boundary");
            prev = cur;
        }
    }

    return out;
}

namespace {

int node_hit(const NodeSystem& nodes, cplx z) {
    for (int i = 0; i < nodes.count(); ++i)
        if (z == nodes.alpha(i + 1)) return i + 1;
    return 0;
}

cplx finish(const LogComplex& term_log) {
    cplx v = term_log.to_complex();
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        fail(ErrorKind::overflow, "interpolant term magnitude left binary64 range (log magnitude " +
                                      fmt_double(term_log.log_mag) + ")");
    return v;
}

} // namespace

cplx eval_g(const HermiteInterpolant& interp, cplx z) {
    const NodeSystem& nodes = interp.nodes;
    if (int i = node_hit(nodes, z)) {
        // Terms j != i vanish to second order at alpha_i; the surviving term
        // reduces to H_i(alpha_i) a_i / alpha_i^2.
        std::size_t idx = static_cast<std::size_t>(i - 1);
        return finish(lc_div(lc_mul(interp.h_at_node[idx], interp.coeff_a[idx]),
                             alpha_sq_log(nodes.alpha(i))));
    }
    KahanComplexSum sum;
    for (int j = 1; j <= nodes.count(); ++j) {
        std::size_t idx = static_cast<std::size_t>(j - 1);
        LogComplex h = eval_H_excl(nodes, j, z);
        LogComplex lin = lc_add(interp.coeff_a[idx],
                                lc_mul(interp.coeff_b[idx], LogComplex::from(z - nodes.alpha(j))));
        sum.add(finish(lc_div(lc_mul(h, lin), alpha_sq_log(nodes.alpha(j)))));
    }
    return sum.value();
}

cplx eval_g_deriv(const HermiteInterpolant& interp, cplx z) {
    const NodeSystem& nodes = interp.nodes;
    if (int i = node_hit(nodes, z)) {
        // For j != i both H_j and H_j' vanish at alpha_i (the deleted product
        // keeps a double zero there), so only term_i contributes:
        //   (H_i lambda_i a_i + H_i b_i) / alpha_i^2.
        std::size_t idx = static_cast<std::size_t>(i - 1);
        LogComplex bracket = lc_add(lc_mul(LogComplex::from(interp.lambda_at_node[idx]), interp.coeff_a[idx]),
                                    interp.coeff_b[idx]);
        return finish(lc_div(lc_mul(interp.h_at_node[idx], bracket), alpha_sq_log(nodes.alpha(i))));
    }
    KahanComplexSum sum;
    for (int j = 1; j <= nodes.count(); ++j) {
        std::size_t idx = static_cast<std::size_t>(j - 1);
        LogComplex h = eval_H_excl(nodes, j, z);
        cplx lambda = eval_H_excl_logderiv(nodes, j, z);
        LogComplex lin = lc_add(interp.coeff_a[idx],
                                lc_mul(interp.coeff_b[idx], LogComplex::from(z - nodes.alpha(j))));
        LogComplex bracket = lc_add(lc_mul(LogComplex::from(lambda), lin), interp.coeff_b[idx]);
        sum.add(finish(lc_div(lc_mul(h, bracket), alpha_sq_log(nodes.alpha(j)))));
    }
    return sum.value();
}

std::vector<ResidualRow> residual_report(const HermiteInterpolant& interp) {
    std::vector<ResidualRow> rows;
    rows.reserve(static_cast<std::size_t>(interp.nodes.count()));
    for (int j = 1; j <= interp.nodes.count(); ++j) {
        std::size_t idx = static_cast<std::size_t>(j - 1);
        ResidualRow row;
        row.j = j;
        row.abs_val_res = std::abs(eval_g(interp, interp.nodes.alpha(j)) - interp.targets.p[idx]);
        row.abs_der_res = std::abs(eval_g_deriv(interp, interp.nodes.alpha(j)) - interp.targets.k[idx]);
        double pm = std::abs(interp.targets.p[idx]);
        double km = std::abs(interp.targets.k[idx]);
        row.rel_val_res = pm > 0.0 ? row.abs_val_res / pm : row.abs_val_res;
        row.rel_der_res = km > 0.0 ? row.abs_der_res / km : row.abs_der_res;
        rows.push_back(row);
    }
    return rows;
}

std::pair<double, double> max_residuals(const HermiteInterpolant& interp) {
    double val = 0, der = 0;
    for (const ResidualRow& row : residual_report(interp)) {
        val = std::max(val, row.rel_val_res);
        der = std::max(der, row.rel_der_res);
    }
    return {val, der};
}

} // namespace brodyforge
