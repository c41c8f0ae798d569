#include "brodyforge/rescaling.hpp"

#include "brodyforge/error.hpp"

#include <algorithm>
#include <cmath>

namespace brodyforge {

namespace {

std::vector<cplx> materialize_grid(const GridSpec& grid) {
    if (!(grid.radius > 0) || !std::isfinite(grid.radius))
        fail(ErrorKind::validation, "grid radius must be positive and finite");
    if (grid.steps < 2) fail(ErrorKind::validation, "grid needs at least 2 steps per axis");
    std::vector<cplx> pts;
    pts.reserve(static_cast<size_t>(grid.steps) * grid.steps);
    double R = grid.radius;
    double denom = static_cast<double>(grid.steps - 1);
    for (int iy = 0; iy < grid.steps; ++iy) {
        double y = -R + (2.0 * R * iy) / denom;
        for (int ix = 0; ix < grid.steps; ++ix) {
            double x = -R + (2.0 * R * ix) / denom;
            if (std::hypot(x, y) <= R) pts.emplace_back(x, y);
        }
    }
    return pts;
}

cplx first_coord_punctured(const RescalingRun& run, int j, cplx xi) {
    cplx z = static_cast<double>(j) * (run.a_j(j) + run.rho_j(j) * xi);
    return std::exp(z);
}

} // namespace

RescalingRun make_rescaling_run(CurveSpec curve, cplx A, cplx B, double delta,
                                std::vector<int> j_list, GridSpec grid) {
    if (!std::isfinite(A.real()) || !std::isfinite(A.imag()))
        fail(ErrorKind::validation, "center parameter A must be finite");
    if (!std::isfinite(B.real()) || !std::isfinite(B.imag()) || std::abs(B) == 0)
        fail(ErrorKind::validation, "scale parameter B must be finite and nonzero");
    if (!std::isfinite(delta)) fail(ErrorKind::validation, "radius perturbation delta must be finite");
    if (j_list.empty()) fail(ErrorKind::validation, "j_list must be nonempty");

    RescalingRun run;
    run.curve = std::move(curve);
    run.A = A;
    run.B = B;
    run.delta = delta;
    run.j_list = std::move(j_list);
    run.grid = grid;
    run.xi = materialize_grid(grid);

    int prev = 0;
    for (int j : run.j_list) {
        if (j < 1) fail(ErrorKind::validation, "indices in j_list must be >= 1");
        if (j <= prev) fail(ErrorKind::validation, "j_list must be strictly increasing");
        prev = j;
        if (!(static_cast<double>(j) > std::abs(A)))
            fail(ErrorKind::validation, "need j > |A| so the center a_j = A/j stays in the unit disk; j = " +
                                            std::to_string(j) + ", |A| = " + fmt_double(std::abs(A)));
        if (!(run.rho_j(j) > 0))
            fail(ErrorKind::validation, "radius rho_" + std::to_string(j) +
                                            " = |B|/j + delta/j^2 = " + fmt_double(run.rho_j(j)) +
                                            " is not positive");
        cplx a = run.a_j(j);
        double rho = run.rho_j(j);
        for (const cplx& xi : run.xi) {
            if (!(std::abs(a + rho * xi) < 1.0))
                fail(ErrorKind::validation,
                     "rescaled sample a_j + rho_j*xi escapes the unit disk at j = " + std::to_string(j) +
                         ", xi = " + fmt_double(xi.real()) + " + " + fmt_double(xi.imag()) + "i");
        }
    }
    return run;
}

std::vector<cplx> family_member(const CurveSpec& curve, int n, cplx z) {
    if (!(std::abs(z) < 1.0))
        fail(ErrorKind::invalid_argument, "family members f_n(z) = F(nz) live on the unit disk; |z| = " +
                                              fmt_double(std::abs(z)));
    return eval_F(curve, static_cast<double>(n) * z);
}

CompactnessReport check_not_compactly_divergent(const CurveSpec& curve,
                                                const std::vector<int>& n_list) {
    if (n_list.empty()) fail(ErrorKind::invalid_argument, "n_list must be nonempty");
    CompactnessReport rep;
    rep.f0 = family_member(curve, n_list.front(), cplx(0.0, 0.0));
    rep.pass = true;
    for (size_t k = 1; k < n_list.size(); ++k) {
        std::vector<cplx> v = family_member(curve, n_list[k], cplx(0.0, 0.0));
        for (size_t i = 0; i < v.size(); ++i) {
            // bitwise: the computation is literally F(0) each time
            if (v[i].real() != rep.f0[i].real() || v[i].imag() != rep.f0[i].imag())
                rep.pass = false;
        }
    }
    KahanSum norm2;
    for (const cplx& c : rep.f0) norm2.add(std::norm(c));
    rep.norm = std::sqrt(norm2.value());
    return rep;
}

std::vector<cplx> rescaled_map(const RescalingRun& run, int j, cplx xi) {
    cplx z = static_cast<double>(j) * (run.a_j(j) + run.rho_j(j) * xi);
    return eval_F(run.curve, z);
}

cplx logderiv_first_analytic(const RescalingRun& run, int j) {
    if (run.curve.variant != CurveSpec::Variant::punctured)
        fail(ErrorKind::invalid_argument,
             "log-derivative diagnostic needs the exponential first coordinate (punctured variant)");
    return cplx(static_cast<double>(j) * run.rho_j(j), 0.0);
}

cplx logderiv_first_fd(const RescalingRun& run, int j, cplx xi, double step) {
    if (run.curve.variant != CurveSpec::Variant::punctured)
        fail(ErrorKind::invalid_argument,
             "log-derivative diagnostic needs the exponential first coordinate (punctured variant)");
    cplx up = first_coord_punctured(run, j, xi + step);
    cplx dn = first_coord_punctured(run, j, xi - step);
    cplx mid = first_coord_punctured(run, j, xi);
    return (up - dn) / (2.0 * step * mid);
}

std::vector<ConvergenceRow> limit_identification(const RescalingRun& run) {
    const CurveSpec& spec = run.curve;
    bool punctured = spec.variant == CurveSpec::Variant::punctured;
    size_t npts = run.xi.size();

    std::vector<ConvergenceRow> rows;
    rows.reserve(run.j_list.size());
    std::vector<double> dev1(npts), dev2(npts), mod1(npts);

    for (int j : run.j_list) {
        parallel_for(npts, [&](size_t i) {
            cplx xi = run.xi[i];
            std::vector<cplx> got = rescaled_map(run, j, xi);
            cplx w = run.A + run.B * xi;
            std::vector<cplx> lim = eval_F(spec, w);
            cplx lim_first = punctured ? std::exp(w) : w;
            dev1[i] = std::abs(got[0] - lim_first);
            KahanSum d2;
            for (size_t c = 0; c < got.size(); ++c) d2.add(std::norm(got[c] - lim[c]));
            dev2[i] = std::sqrt(d2.value());
            mod1[i] = std::abs(got[0]);
        });

        ConvergenceRow row;
        row.j = j;
        row.jrho_measured = static_cast<double>(j) * run.rho_j(j);
        row.min_modulus_first_coord = npts ? mod1[0] : 0.0;
        for (size_t i = 0; i < npts; ++i) {
            row.dev_first_coord = std::max(row.dev_first_coord, dev1[i]);
            row.dev_full_map = std::max(row.dev_full_map, dev2[i]);
            row.min_modulus_first_coord = std::min(row.min_modulus_first_coord, mod1[i]);
        }
        cplx center = static_cast<double>(j) * run.a_j(j);
        row.center_image = punctured ? std::exp(center) : center;
        if (punctured) {
            // mimic the proof's quotient at a few fixed sample points
            static const cplx samples[] = {{0.0, 0.0}, {0.5, 0.0}, {-0.5, 0.0}, {0.0, 0.5}, {0.3, -0.4}};
            double jrho = row.jrho_measured;
            for (const cplx& s : samples) {
                cplx q = logderiv_first_fd(run, j, s);
                row.logderiv_fd_rel_err =
                    std::max(row.logderiv_fd_rel_err, std::abs(q - cplx(jrho, 0.0)) / jrho);
                row.logderiv_fd_imag_max = std::max(row.logderiv_fd_imag_max, std::abs(q.imag()));
            }
        }
        rows.push_back(row);
    }
    return rows;
}

WitnessReport contradiction_witness(const RescalingRun& run, const std::vector<double>& c_list,
                                    const std::vector<BlowupRow>& blowup, double chain_tol) {
    const CurveSpec& spec = run.curve;
    double absB = std::abs(run.B);
    WitnessReport rep;

    // G(xi) = F(A + B xi) sends xi_j = (q_j - A)/B to F(q_j) exactly, so the
    // tangent comparison is made at the transported parameter q_j itself: the
    // interpolant's derivative turns over so steeply near the top nodes that
    // re-deriving q_j from A + B*((q_j - A)/B) in floats would shift g' by
    // many orders of magnitude.
    rep.chain.reserve(blowup.size());
    for (const BlowupRow& row : blowup) {
        std::vector<cplx> base = eval_F(spec, row.point);
        std::vector<cplx> tan = eval_F_tangent(spec, row.point);
        for (cplx& t : tan) t *= run.B;
        ChainRuleRow cr;
        cr.j = row.j;
        cr.g_side = length(spec.metric, base, tan);
        cr.f_side = absB * row.length_E;
        cr.rel_err = std::abs(cr.g_side - cr.f_side) / std::max(cr.f_side, 1e-300);
        if (!(cr.rel_err <= chain_tol))
            fail(ErrorKind::tolerance, "affine chain rule |G'|_E = |B| |F'|_E violated at j = " +
                                           std::to_string(cr.j) + ": " + fmt_double(cr.g_side) + " vs " +
                                           fmt_double(cr.f_side));
        rep.chain.push_back(cr);
    }

    rep.witnesses.reserve(c_list.size());
    for (double c : c_list) {
        WitnessRow w;
        w.c = c;
        for (const BlowupRow& row : blowup) {
            if (absB * row.lower_bound >= c) {
                w.j = row.j;
                w.bound_scaled = absB * row.lower_bound;
                w.length_scaled = absB * row.length_E;
                break;
            }
        }
        rep.witnesses.push_back(w);
    }
    return rep;
}

} // namespace brodyforge
