#pragma once

#include "brodyforge/nodes.hpp"
#include "brodyforge/numeric.hpp"
#include "brodyforge/products.hpp"

#include <vector>

namespace brodyforge {

// First-order jets to realize: g(alpha_j) = p_j, g'(alpha_j) = k_j.
struct InterpolationTargets {
    std::vector<cplx> p;
    std::vector<cplx> k;
};

// g(z) = sum_j H_j(z) (a_j + b_j (z - alpha_j)) / alpha_j^2 with
//   a_j = p_j alpha_j^2 / H_j(alpha_j),
//   b_j = (k_j alpha_j^2 - a_j H_j(alpha_j) lambda_j) / H_j(alpha_j),
//   lambda_j = H_j'(alpha_j)/H_j(alpha_j).
// Every term inherits H_j's double zero at each other node, so the basis
// interpolates jets exactly; coefficients live in log form because numerator
// and denominator magnitudes overflow separately long before their ratio does.
struct HermiteInterpolant {
    NodeSystem nodes;
    std::vector<LogComplex> coeff_a, coeff_b;
    InterpolationTargets targets; // provenance
    // Construction-time cache: H_j(alpha_j) and lambda_j(alpha_j).
    std::vector<LogComplex> h_at_node;
    std::vector<cplx> lambda_at_node;
};

struct InterpolantOptions {
    // Beyond this index, the per-term sup on the evaluation-domain boundary
    // ring must decay monotonically or construction is rejected.
    int decay_guard_from = 4;
    double tail_bound_max = 0.5;
};

HermiteInterpolant build_interpolant(const NodeSystem& nodes, const InterpolationTargets& targets,
                                     const InterpolantOptions& opt = {});

// Evaluation. When z bitwise-equals a node the structurally surviving term is
// evaluated directly (all others vanish to second order there); elsewhere the
// per-term assembly runs in log form and the final sum in binary64.
cplx eval_g(const HermiteInterpolant& interp, cplx z);
cplx eval_g_deriv(const HermiteInterpolant& interp, cplx z);

struct ResidualRow {
    int j = 0;
    double abs_val_res = 0, abs_der_res = 0;
    double rel_val_res = 0, rel_der_res = 0; // relative to |target|; absolute when the target is 0
};

std::vector<ResidualRow> residual_report(const HermiteInterpolant& interp);

// Largest relative residuals over all nodes (value, derivative).
std::pair<double, double> max_residuals(const HermiteInterpolant& interp);

} // namespace brodyforge
