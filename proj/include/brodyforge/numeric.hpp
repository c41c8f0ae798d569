#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace brodyforge {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846264338327950288;

// Map an angle to the principal interval (-pi, pi]; the boundary -pi folds to +pi.
double reduce_phase(double phase);

// Polar logarithmic representation of a complex value. Exact zero is
// log_mag == -inf; phase is always kept in (-pi, pi].
struct LogComplex {
    double log_mag = -std::numeric_limits<double>::infinity();
    double phase = 0.0;

    static LogComplex zero() { return {}; }
    static LogComplex from(cplx v);
    static LogComplex from_parts(double log_mag, double phase);

    bool is_zero() const { return std::isinf(log_mag) && log_mag < 0; }
    cplx to_complex() const; // may overflow to inf when log_mag ~ 710
};

LogComplex lc_mul(const LogComplex& a, const LogComplex& b);
LogComplex lc_div(const LogComplex& a, const LogComplex& b);
LogComplex lc_neg(const LogComplex& a);
// log-sum-exp style addition: both operands are rescaled by the larger
// magnitude so the visible arithmetic stays O(1).
LogComplex lc_add(const LogComplex& a, const LogComplex& b);

// Neumaier-compensated accumulators.
class KahanSum {
public:
    void add(double x);
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0, comp_ = 0.0;
};

class KahanComplexSum {
public:
    void add(cplx z) { re_.add(z.real()); im_.add(z.imag()); }
    cplx value() const { return {re_.value(), im_.value()}; }

private:
    KahanSum re_, im_;
};

// Phase accumulator: termwise addition, re-reduced to (-pi, pi] at each step.
class PhaseSum {
public:
    void add(double phase) { acc_ = reduce_phase(acc_ + phase); }
    double value() const { return acc_; }

private:
    double acc_ = 0.0;
};

// Fixed 17-significant-digit decimal rendering; lossless for binary64.
std::string fmt_double(double v);

// Deterministic data-parallel helper: body(i) for i in [0, n). The worker
// count comes from BRODY_FORGE_THREADS (0 or unset = hardware concurrency);
// work is split in contiguous chunks so writes-by-index stay race-free.
// Reductions must be performed by the caller over an index-addressed buffer.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace brodyforge
