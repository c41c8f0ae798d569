#include "brodyforge/numeric.hpp"

#include <cstdio>
#include <cstdlib>
#include <thread>

namespace brodyforge {

double reduce_phase(double phase) {
    double r = std::remainder(phase, 2.0 * pi);
    if (r <= -pi) r = pi; // remainder can land exactly on -pi
    return r;
}

LogComplex LogComplex::from(cplx v) {
    double mag = std::abs(v);
    if (mag == 0.0) return zero();
    return {std::log(mag), reduce_phase(std::arg(v))};
}

LogComplex LogComplex::from_parts(double log_mag, double phase) {
    if (std::isinf(log_mag) && log_mag < 0) return zero();
    return {log_mag, reduce_phase(phase)};
}

cplx LogComplex::to_complex() const {
    if (is_zero()) return {0.0, 0.0};
    double m = std::exp(log_mag);
    return {m * std::cos(phase), m * std::sin(phase)};
}

LogComplex lc_mul(const LogComplex& a, const LogComplex& b) {
    if (a.is_zero() || b.is_zero()) return LogComplex::zero();
    return LogComplex::from_parts(a.log_mag + b.log_mag, a.phase + b.phase);
}

LogComplex lc_div(const LogComplex& a, const LogComplex& b) {
    if (a.is_zero()) return LogComplex::zero();
    return LogComplex::from_parts(a.log_mag - b.log_mag, a.phase - b.phase);
}

LogComplex lc_neg(const LogComplex& a) {
    if (a.is_zero()) return a;
    return LogComplex::from_parts(a.log_mag, a.phase + pi);
}

LogComplex lc_add(const LogComplex& a, const LogComplex& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const LogComplex& hi = (a.log_mag >= b.log_mag) ? a : b;
    const LogComplex& lo = (a.log_mag >= b.log_mag) ? b : a;
    double scale = std::exp(lo.log_mag - hi.log_mag); // in [0, 1]
    cplx w = cplx(std::cos(hi.phase), std::sin(hi.phase)) +
             scale * cplx(std::cos(lo.phase), std::sin(lo.phase));
    double mag = std::abs(w);
    if (mag == 0.0) return LogComplex::zero();
    return LogComplex::from_parts(hi.log_mag + std::log(mag), std::arg(w));
}

void KahanSum::add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
        comp_ += (sum_ - t) + x;
    else
        comp_ += (x - t) + sum_;
    sum_ = t;
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

unsigned configured_threads() {
    const char* env = std::getenv("BRODY_FORGE_THREADS");
    long v = 0;
    if (env && *env) v = std::strtol(env, nullptr, 10);
    if (v <= 0) {
        unsigned hw = std::thread::hardware_concurrency();
        return hw ? hw : 1;
    }
    return static_cast<unsigned>(v);
}

} // namespace

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    if (n == 0) return;
    unsigned workers = configured_threads();
    if (workers <= 1 || n < 64) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    if (workers > n) workers = static_cast<unsigned>(n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned t = 0; t < workers; ++t) {
        std::size_t lo = t * chunk;
        std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&body, lo, hi] {
            for (std::size_t i = lo; i < hi; ++i) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace brodyforge
