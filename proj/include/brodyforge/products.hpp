#pragma once

#include "brodyforge/nodes.hpp"
#include "brodyforge/numeric.hpp"

#include <vector>

namespace brodyforge {

// h(z) = prod_j (1 - z/alpha_j)^2, truncated at the node system's count.
// Truncation error (geometric systems, |z| < |alpha_{J+1}|):
//   |log correction| <= 2 |z| tail_bound / (1 - |z| / |alpha_{J+1}|).
//
// When z equals a node bitwise the vanishing factor is recognized
// symbolically, so the double zero is exact: h = 0 and h' = 0 with no
// floating-point cancellation involved.
cplx eval_h(const NodeSystem& nodes, cplx z);           // throws overflow when out of range
LogComplex eval_h_log(const NodeSystem& nodes, cplx z); // log form, -inf at nodes
cplx eval_h_deriv(const NodeSystem& nodes, cplx z);     // analytic h'(z) = h(z) sum_j 2/(z - alpha_j)

// Factor-deleted product H_j(z) = prod_{i != j} (1 - z/alpha_i)^2, in log form
// (its magnitude at alpha_j grows like rho^{j(j-1)} for geometric systems).
LogComplex eval_H_excl(const NodeSystem& nodes, int j, cplx z);

// H_j'(z)/H_j(z) = sum_{i != j} 2/(z - alpha_i). Throws invalid_argument on a
// pole (z equal to some alpha_i, i != j) or an out-of-range index.
cplx eval_H_excl_logderiv(const NodeSystem& nodes, int j, cplx z);

enum class Verdict { both_converge, both_diverge, inconsistent };

const char* to_string(Verdict v);

// Partial sums of c_n next to partial products of (1 +- c_n). The verdict
// couples a convergence detector run on the sum scale with the same detector
// run on log prod(1 + c_n); disagreement (inconsistent) signals a bug, not a
// property of the input.
struct ConvergenceReport {
    std::vector<double> partial_sums;
    std::vector<double> partial_products_plus;
    std::vector<double> partial_products_minus;
    Verdict verdict = Verdict::inconsistent;
};

struct Lemma1Options {
    double cauchy_tol = 1e-12;      // window increment threshold
    int cauchy_window = 32;         // trailing terms inspected
    double divergence_sentinel = 1e12;
    double tail_ratio_cut = 0.95;   // dyadic tail ratio below this => convergent
};

// All c_n must be positive (throws invalid_argument otherwise); the minus
// product additionally assumes c_n < 1 to be meaningful and is reported
// as computed either way.
ConvergenceReport lemma1_classify(const std::vector<double>& c, const Lemma1Options& opt = {});

} // namespace brodyforge
