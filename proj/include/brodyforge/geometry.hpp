#pragma once

#include "brodyforge/numeric.hpp"

#include <vector>

namespace brodyforge {

// Hermitian length evaluators. Euclidean on C^n, or the Fubini-Study metric
// of P^2 restricted to the affine chart [1 : z1 : z2] -> (z1, z2), in the
// constant-curvature normalization
//   length^2 = ((1+|p|^2) |v|^2 - |<v,p>|^2) / (1+|p|^2)^2.
struct MetricSpec {
    enum class Kind { euclidean, fubini_study_p2 };

    Kind kind = Kind::euclidean;
    int n = 2; // ambient complex dimension (euclidean); fs_p2 is fixed at 2

    static MetricSpec euclidean(int n);
    static MetricSpec fs_p2();

    int dim() const { return kind == Kind::fubini_study_p2 ? 2 : n; }
};

// Length of tangent vector v at base point p. Throws invalid_argument on a
// dimension mismatch or non-finite entries.
double length(const MetricSpec& metric, const std::vector<cplx>& base, const std::vector<cplx>& v);

// length(t1 + t2) - |length(t1) - length(t2)| at a common base point; the
// reverse triangle inequality makes this nonnegative up to rounding.
double triangle_gap(const MetricSpec& metric, const std::vector<cplx>& base,
                    const std::vector<cplx>& v1, const std::vector<cplx>& v2);

} // namespace brodyforge
