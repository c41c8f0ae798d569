#pragma once

#include "brodyforge/geometry.hpp"
#include "brodyforge/interpolation.hpp"
#include "brodyforge/nodes.hpp"

#include <vector>

namespace brodyforge {

// Inner curve f into the second factor X.
struct InnerCurve {
    enum class Kind {
        exp_to_cstar,  // f(w) = e^w,            X = C*
        identity_to_c, // f(w) = w,              X = C
        diagonal_to_cn // f(w) = (w, ..., w),    X = C^{n-1}
    };

    Kind kind = Kind::identity_to_c;
    int n = 2; // ambient dimension of C x X for the diagonal kind

    static InnerCurve exp_to_cstar() { return {Kind::exp_to_cstar, 2}; }
    static InnerCurve identity_to_c() { return {Kind::identity_to_c, 2}; }
    static InnerCurve diagonal_to_cn(int n);

    int target_dim() const { return kind == Kind::diagonal_to_cn ? n - 1 : 1; }
    void eval(cplx w, std::vector<cplx>& out) const;       // f(w)
    void eval_deriv(cplx w, std::vector<cplx>& out) const; // f'(w)
};

struct CurveTolerances {
    double residual_rel = 1e-6;  // interpolation residuals gate curve construction
    double qj_roundtrip = 1e-14; // |exp(q_j) - alpha_j| / |alpha_j|
    double blowup_rel = 1e-9;    // length_E >= lower_bound - blowup_rel (1 + lower_bound)
    double tail_bound_max = 0.5;
};

// F(z) = (e^z, f(g(e^z))) on the punctured variant (C* x X), or
// F(z) = (z, f(g(z))) on the plane variant (C x X), with g interpolating
// the jets (p_j, k_j) at the nodes and k_j = j (1/E1_j + E2_j).
struct CurveSpec {
    enum class Variant { punctured, plane };

    Variant variant = Variant::plane;
    InnerCurve inner;
    MetricSpec metric;
    NodeSystem nodes;
    std::vector<cplx> p_targets;
    std::vector<double> k_sched;
    std::vector<double> e1, e2; // the two lengths entering the schedule
    std::vector<cplx> q;        // evaluation anchors: Log alpha_j / alpha_j
    HermiteInterpolant interp;
    CurveTolerances tol;

    int ambient_dim() const { return 1 + inner.target_dim(); }
};

// k_j = j (1/E1_j + E2_j), with
//   punctured: E1_j = |(0, f'(p_j) alpha_j)|_E at (alpha_j, f(p_j)),  E2_j = |(alpha_j, 0)|_E;
//   plane:     E1_j = |(0, f'(p_j))|_E,                               E2_j = |(1, 0)|_E.
// Throws validation if E1_j degenerates to 0.
double schedule_kj(int j, const NodeSystem& nodes, const std::vector<cplx>& p_targets,
                   const InnerCurve& inner, const MetricSpec& metric, CurveSpec::Variant variant,
                   double* e1_out = nullptr, double* e2_out = nullptr);

// Computes the schedule, builds and gates the interpolant, fixes the anchors
// q_j (principal logarithm on the punctured variant, checked to round-trip).
CurveSpec build_curve(CurveSpec::Variant variant, const InnerCurve& inner, const MetricSpec& metric,
                      const NodeSystem& nodes, std::vector<cplx> p_targets = {},
                      const CurveTolerances& tol = {});

// F and its tangent. A z that bitwise-equals an anchor q_j is transported
// through the identity e^{q_j} = alpha_j analytically: the inner argument is
// taken to be the node itself. (The basis terms turn over so steeply near the
// high nodes that the exp/log round-trip noise would otherwise be amplified
// by ~10 orders of magnitude.)
std::vector<cplx> eval_F(const CurveSpec& spec, cplx z);
std::vector<cplx> eval_F_tangent(const CurveSpec& spec, cplx z);
double eval_F_deriv_length(const CurveSpec& spec, cplx z);

struct BlowupRow {
    int j = 0;
    cplx point;              // domain point the tangent is measured at
    double length_E = 0;     // measured |F'|_E
    double lower_bound = 0;  // j (1 + E1_j E2_j) - E2_j
    double ratio = 0;        // length_E / j
};

// Rows for j = 1..J_max; verifies length >= lower bound (within tol.blowup_rel)
// and that the bounds increase strictly, else throws tolerance.
std::vector<BlowupRow> blowup_table(const CurveSpec& spec);

} // namespace brodyforge
