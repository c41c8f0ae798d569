#include "brodyforge/geometry.hpp"

#include "brodyforge/error.hpp"

#include <cmath>

namespace brodyforge {

MetricSpec MetricSpec::euclidean(int n) {
    if (n < 1) fail(ErrorKind::validation, "euclidean metric needs dimension n >= 1");
    return {Kind::euclidean, n};
}

MetricSpec MetricSpec::fs_p2() { return {Kind::fubini_study_p2, 2}; }

namespace {

void check_input(const MetricSpec& metric, const std::vector<cplx>& base,
                 const std::vector<cplx>& v) {
    std::size_t want = static_cast<std::size_t>(metric.dim());
    if (base.size() != want || v.size() != want)
        fail(ErrorKind::invalid_argument,
             "dimension mismatch: metric expects " + std::to_string(want) + ", got base " +
                 std::to_string(base.size()) + " / vector " + std::to_string(v.size()));
    for (const cplx& x : base)
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
            fail(ErrorKind::invalid_argument, "non-finite base point");
    for (const cplx& x : v)
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
            fail(ErrorKind::invalid_argument, "non-finite tangent vector");
}

double norm_sq(const std::vector<cplx>& v) {
    KahanSum s;
    for (const cplx& x : v) s.add(x.real() * x.real() + x.imag() * x.imag());
    return s.value();
}

} // namespace

double length(const MetricSpec& metric, const std::vector<cplx>& base, const std::vector<cplx>& v) {
    check_input(metric, base, v);
    if (metric.kind == MetricSpec::Kind::euclidean) return std::sqrt(norm_sq(v));

    double p2 = norm_sq(base);
    double v2 = norm_sq(v);
    KahanComplexSum ip; // <v, p> = sum v_i conj(p_i)
    for (std::size_t i = 0; i < v.size(); ++i) ip.add(v[i] * std::conj(base[i]));
    double ip2 = std::norm(ip.value());
    double denom = 1.0 + p2;
    // Cauchy-Schwarz keeps the numerator >= v2 > 0 in exact arithmetic;
    // clamp the rounding residue.
    double num = denom * v2 - ip2;
    if (num < 0.0) num = 0.0;
    return std::sqrt(num) / denom;
}

double triangle_gap(const MetricSpec& metric, const std::vector<cplx>& base,
                    const std::vector<cplx>& v1, const std::vector<cplx>& v2) {
    check_input(metric, base, v1);
    check_input(metric, base, v2);
    std::vector<cplx> sum(v1.size());
    for (std::size_t i = 0; i < v1.size(); ++i) sum[i] = v1[i] + v2[i];
    return length(metric, base, sum) - std::abs(length(metric, base, v1) - length(metric, base, v2));
}

} // namespace brodyforge
