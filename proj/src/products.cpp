#include "brodyforge/products.hpp"

#include "brodyforge/error.hpp"

#include <cmath>

namespace brodyforge {

namespace {

bool hits_node(const NodeSystem& nodes, cplx z) {
    for (const cplx& a : nodes.alphas)
        if (z == a) return true;
    return false;
}

void check_index(const NodeSystem& nodes, int j) {
    if (j < 1 || j > nodes.count())
        fail(ErrorKind::invalid_argument,
             "node index " + std::to_string(j) + " out of range 1.." + std::to_string(nodes.count()));
}

// Accumulate sum of 2*log(1 - z/alpha_i) over i != skip (0-based; -1 = none).
LogComplex log_product(const NodeSystem& nodes, cplx z, int skip) {
    KahanSum log_mag;
    PhaseSum phase;
    for (int i = 0; i < nodes.count(); ++i) {
        if (i == skip) continue;
        cplx f = 1.0 - z / nodes.alphas[static_cast<std::size_t>(i)];
        double m = std::abs(f);
        if (m == 0.0) return LogComplex::zero();
        log_mag.add(2.0 * std::log(m));
        phase.add(reduce_phase(2.0 * std::arg(f)));
    }
    return LogComplex::from_parts(log_mag.value(), phase.value());
}

} // namespace

cplx eval_h(const NodeSystem& nodes, cplx z) {
    if (hits_node(nodes, z)) return {0.0, 0.0};
    cplx out(1.0, 0.0);
    for (const cplx& a : nodes.alphas) {
        cplx f = 1.0 - z / a;
        out *= f * f;
    }
    if (!std::isfinite(out.real()) || !std::isfinite(out.imag()))
        fail(ErrorKind::overflow, "product magnitude left binary64 range; use the log-form evaluator");
    return out;
}

LogComplex eval_h_log(const NodeSystem& nodes, cplx z) {
    if (hits_node(nodes, z)) return LogComplex::zero();
    return log_product(nodes, z, -1);
}

cplx eval_h_deriv(const NodeSystem& nodes, cplx z) {
    // Every term of h'(z) = sum_i (-2/alpha_i)(1 - z/alpha_i) prod_{k != i} (1 - z/alpha_k)^2
    // carries at least one vanishing factor at a node, so the value is
    // structurally zero there.
    if (hits_node(nodes, z)) return {0.0, 0.0};
    cplx h = eval_h(nodes, z);
    KahanComplexSum logderiv;
    for (const cplx& a : nodes.alphas) logderiv.add(2.0 / (z - a));
    cplx out = h * logderiv.value();
    if (!std::isfinite(out.real()) || !std::isfinite(out.imag()))
        fail(ErrorKind::overflow, "derivative magnitude left binary64 range");
    return out;
}

LogComplex eval_H_excl(const NodeSystem& nodes, int j, cplx z) {
    check_index(nodes, j);
    return log_product(nodes, z, j - 1);
}

cplx eval_H_excl_logderiv(const NodeSystem& nodes, int j, cplx z) {
    check_index(nodes, j);
    KahanComplexSum sum;
    for (int i = 0; i < nodes.count(); ++i) {
        if (i == j - 1) continue;
        cplx d = z - nodes.alphas[static_cast<std::size_t>(i)];
        if (d == cplx(0.0, 0.0))
            fail(ErrorKind::invalid_argument,
                 "pole hit: z equals node " + std::to_string(i + 1) + " (deleted index is " +
                     std::to_string(j) + ")");
        sum.add(2.0 / d);
    }
    return sum.value();
}

const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::both_converge: return "both-converge";
    case Verdict::both_diverge: return "both-diverge";
    default: return "inconsistent";
    }
}

namespace {

enum class Trend { converged, diverged };

// Detector for a monotone nondecreasing partial-sum sequence.
Trend detect(const std::vector<double>& partials, const Lemma1Options& opt) {
    std::size_t n = partials.size();
    double last = partials[n - 1];
    if (!(last < opt.divergence_sentinel)) return Trend::diverged;
    if (n > static_cast<std::size_t>(opt.cauchy_window)) {
        double window = last - partials[n - 1 - static_cast<std::size_t>(opt.cauchy_window)];
        if (window < opt.cauchy_tol) return Trend::converged;
    } else if (n >= 2 && last - partials[0] < opt.cauchy_tol) {
        return Trend::converged;
    }
    if (n >= 8) {
        // Dyadic tail ratio: for c_n ~ n^{-p} this estimates 2^{1-p}, so the
        // cut separates summable from non-summable power decay.
        double d1 = partials[n - 1] - partials[n / 2 - 1];
        double d0 = partials[n / 2 - 1] - partials[n / 4 - 1];
        if (d0 > 0.0 && d1 / d0 <= opt.tail_ratio_cut) return Trend::converged;
        if (d0 == 0.0 && d1 == 0.0) return Trend::converged;
    }
    return Trend::diverged;
}

} // namespace

ConvergenceReport lemma1_classify(const std::vector<double>& c, const Lemma1Options& opt) {
    if (c.empty()) fail(ErrorKind::invalid_argument, "empty sequence");
    for (std::size_t i = 0; i < c.size(); ++i)
        if (!(c[i] > 0.0) || !std::isfinite(c[i]))
            fail(ErrorKind::invalid_argument,
                 "c_" + std::to_string(i + 1) + " = " + fmt_double(c[i]) + " is not positive");

    ConvergenceReport rep;
    rep.partial_sums.reserve(c.size());
    rep.partial_products_plus.reserve(c.size());
    rep.partial_products_minus.reserve(c.size());

    KahanSum sum, log_plus;
    double prod_plus = 1.0, prod_minus = 1.0;
    std::vector<double> log_plus_partials;
    log_plus_partials.reserve(c.size());
    for (double cn : c) {
        sum.add(cn);
        log_plus.add(std::log1p(cn)); // classification scale; immune to product overflow
        prod_plus *= 1.0 + cn;
        prod_minus *= 1.0 - cn;
        rep.partial_sums.push_back(sum.value());
        log_plus_partials.push_back(log_plus.value());
        rep.partial_products_plus.push_back(prod_plus);
        rep.partial_products_minus.push_back(prod_minus);
    }

    Trend on_sum = detect(rep.partial_sums, opt);
    Trend on_prod = detect(log_plus_partials, opt);
    if (on_sum == Trend::converged && on_prod == Trend::converged)
        rep.verdict = Verdict::both_converge;
    else if (on_sum == Trend::diverged && on_prod == Trend::diverged)
        rep.verdict = Verdict::both_diverge;
    else
        rep.verdict = Verdict::inconsistent;
    return rep;
}

} // namespace brodyforge
