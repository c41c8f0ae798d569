#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "brodyforge/error.hpp"
#include "brodyforge/products.hpp"
#include "support/oracles.hpp"
#include "support/quad_oracles.hpp"

#include <cmath>

using namespace brodyforge;
using namespace testsupport;

namespace {
const NodeSystem kDefault = NodeSystem::geometric(4.0, 4.0, 8);
}

TEST_CASE("truncated product matches a 33-digit re-evaluation") {
    for (cplx z : {cplx{2, 0}, cplx{-3.5, 1.25}, cplx{0.75, -0.5}, cplx{17, 9}}) {
        cplx got = eval_h(kDefault, z);
        qcplx want = quad_h_geometric(4.0, 4.0, 8, z);
        CHECK(q_rel_err(q_from(got), want) < 1e-12);
    }
}

TEST_CASE("log form matches quad at larger arguments and systems") {
    NodeSystem nodes = NodeSystem::geometric(4.0, 4.0, 12);
    for (cplx z : {cplx{10, 0}, cplx{10, 3}, cplx{-200, 50}}) {
        LogComplex got = eval_h_log(nodes, z);
        qcplx want = quad_h_geometric(4.0, 4.0, 12, z);
        double want_logmag = static_cast<double>(logq(cabsq(want)));
        double want_phase = static_cast<double>(cargq(want));
        CHECK(std::abs(got.log_mag - want_logmag) < 1e-12 * std::max(1.0, std::abs(want_logmag)));
        CHECK(std::abs(reduce_phase(got.phase - want_phase)) < 1e-12);
    }
}

TEST_CASE("truncation error sits inside the documented tail bound") {
    // J = 8 vs 200 terms of the same geometric family, in quad.
    for (cplx z : {cplx{2, 0}, cplx{1, 1}, cplx{-2, 0.5}}) {
        qcplx h8 = quad_h_geometric(4.0, 4.0, 8, z);
        qcplx h200 = quad_h_geometric(4.0, 4.0, 200, z);
        double log_shift = static_cast<double>(fabsq(logq(cabsq(h200) / cabsq(h8))));
        double az = std::abs(z);
        double bound = 2.0 * az * kDefault.tail_bound / (1.0 - az / (4.0 * 65536.0));
        CHECK(log_shift <= bound);
    }
}

TEST_CASE("double zeros at the nodes are exact, not approximate") {
    for (int j = 1; j <= kDefault.count(); ++j) {
        cplx alpha = kDefault.alpha(j);
        CHECK(eval_h(kDefault, alpha) == cplx{0.0, 0.0});
        CHECK(eval_h_deriv(kDefault, alpha) == cplx{0.0, 0.0});
        CHECK(eval_h_log(kDefault, alpha).is_zero());
    }
    // one ulp away the value is nonzero
    cplx near = kDefault.alpha(3) * (1.0 + 1e-15);
    CHECK(eval_h(kDefault, near) != cplx{0.0, 0.0});
}

TEST_CASE("factor-deleted product times the deleted factor rebuilds h") {
    Rng rng(101);
    for (int trial = 0; trial < 40; ++trial) {
        cplx z = rng.box(30.0);
        for (int j = 1; j <= kDefault.count(); ++j) {
            cplx alpha = kDefault.alpha(j);
            LogComplex factor = LogComplex::from(1.0 - z / alpha);
            LogComplex rebuilt = lc_mul(eval_H_excl(kDefault, j, z), lc_mul(factor, factor));
            LogComplex direct = eval_h_log(kDefault, z);
            CHECK(std::abs(rebuilt.log_mag - direct.log_mag) <
                  1e-10 * std::max(1.0, std::abs(direct.log_mag)));
            CHECK(std::abs(reduce_phase(rebuilt.phase - direct.phase)) < 1e-10);
        }
    }
}

TEST_CASE("H_j(alpha_j) agrees with the h(alpha_j(1+eps))/eps^2 limit") {
    // h factors as eps^2 H_j near alpha_j; the quotient is an oracle for the
    // deleted product that never touches the exclusion logic.
    NodeSystem nodes = NodeSystem::geometric(2.0, 2.0, 6);
    const int j = 5; // alpha_5 = 32
    cplx alpha = nodes.alpha(j);
    double eps_req = 1e-7;
    double eps = (1.0 + eps_req) - 1.0; // quantized perturbation actually applied
    cplx z = alpha * (1.0 + eps_req);
    cplx limit_est = eval_h(nodes, z) / (eps * eps);
    cplx direct = eval_H_excl(nodes, j, alpha).to_complex();
    CHECK(rel_err(limit_est, direct) < 1e-4);
}

TEST_CASE("analytic derivative matches central differences") {
    Rng rng(202);
    int checked = 0;
    while (checked < 100) {
        cplx z = rng.box(15.0);
        if (std::abs(z.imag()) < 0.3) continue; // stay away from the real-axis zeros
        double step = 1e-6 * std::max(1.0, std::abs(z));
        cplx fd = fd_deriv([&](cplx w) { return eval_h(kDefault, w); }, z, step);
        cplx an = eval_h_deriv(kDefault, z);
        CHECK(rel_err(fd, an) < 1e-6);
        ++checked;
    }
}

TEST_CASE("exclusion log-derivative matches finite differences of log H_j") {
    auto fd_logderiv = [&](const NodeSystem& nodes, int j, cplx z, double step) {
        LogComplex up = eval_H_excl(nodes, j, z + cplx(step, 0));
        LogComplex dn = eval_H_excl(nodes, j, z - cplx(step, 0));
        return cplx{(up.log_mag - dn.log_mag) / (2 * step),
                    reduce_phase(up.phase - dn.phase) / (2 * step)};
    };

    // at the excluded node itself (the lambda_j used by the interpolant)
    cplx alpha3 = kDefault.alpha(3);
    cplx an = eval_H_excl_logderiv(kDefault, 3, alpha3);
    cplx fd = fd_logderiv(kDefault, 3, alpha3, 1e-6 * std::abs(alpha3));
    CHECK(rel_err(fd, an) < 1e-7);

    Rng rng(303);
    for (int trial = 0; trial < 30; ++trial) {
        cplx z = rng.box(20.0);
        if (std::abs(z.imag()) < 0.3) continue;
        int j = 1 + static_cast<int>(rng.uniform(0, kDefault.count() - 0.001));
        cplx a = eval_H_excl_logderiv(kDefault, j, z);
        cplx f = fd_logderiv(kDefault, j, z, 1e-6 * std::max(1.0, std::abs(z)));
        CHECK(rel_err(f, a) < 1e-6);
    }
}

TEST_CASE("exclusion log-derivative refuses poles and bad indices") {
    CHECK_THROWS_AS(eval_H_excl_logderiv(kDefault, 3, kDefault.alpha(4)), Error);
    try {
        eval_H_excl_logderiv(kDefault, 3, kDefault.alpha(4));
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::invalid_argument);
    }
    CHECK_THROWS_AS(eval_H_excl_logderiv(kDefault, 0, cplx{1, 1}), Error);
    CHECK_THROWS_AS(eval_H_excl_logderiv(kDefault, 9, cplx{1, 1}), Error);
    // the excluded node is not a pole
    CHECK_NOTHROW(eval_H_excl_logderiv(kDefault, 3, kDefault.alpha(3)));
}

TEST_CASE("direct evaluation overflows gracefully, log form does not") {
    NodeSystem nodes = NodeSystem::geometric(4.0, 4.0, 12);
    cplx z{1e150, 0.0};
    CHECK_THROWS_AS(eval_h(nodes, z), Error);
    try {
        eval_h(nodes, z);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::overflow);
    }
    LogComplex lg = eval_h_log(nodes, z);
    CHECK(std::isfinite(lg.log_mag));
    CHECK(lg.log_mag > 708.0); // beyond what to_complex could represent
    // quad still represents this magnitude; check the log against it
    qcplx want = quad_h_geometric(4.0, 4.0, 12, z);
    double want_logmag = static_cast<double>(logq(cabsq(want)));
    CHECK(std::abs(lg.log_mag - want_logmag) < 1e-12 * std::abs(want_logmag));
}
