#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "brodyforge/error.hpp"
#include "brodyforge/rescaling.hpp"
#include "support/oracles.hpp"

#include <cmath>
#include <vector>

using namespace brodyforge;
using namespace testsupport;

namespace {

CurveSpec plane_curve() {
    return build_curve(CurveSpec::Variant::plane, InnerCurve::identity_to_c(),
                       MetricSpec::euclidean(2), NodeSystem::geometric(4.0, 4.0, 8));
}

CurveSpec punctured_curve() {
    return build_curve(CurveSpec::Variant::punctured, InnerCurve::exp_to_cstar(),
                       MetricSpec::fs_p2(), NodeSystem::geometric(4.0, 4.0, 8));
}

const cplx kA{0.1, 0.2};
const cplx kB{1.0, 0.0};

} // namespace

TEST_CASE("grid is a deterministic row-major disk lattice") {
    RescalingRun run = make_rescaling_run(punctured_curve(), kA, kB, 0.0, {8});
    CHECK(run.grid.radius == 2.0);
    CHECK(run.grid.steps == 41);
    REQUIRE(!run.xi.empty());
    // bottom row of the scan contains exactly the south pole
    CHECK(run.xi.front() == cplx{0.0, -2.0});
    CHECK(run.xi.back() == cplx{0.0, 2.0});
    size_t inside = 0;
    bool has_origin = false;
    for (const cplx& xi : run.xi) {
        CHECK(std::abs(xi) <= 2.0 + 1e-12);
        if (xi == cplx{0.0, 0.0}) has_origin = true;
        ++inside;
    }
    CHECK(has_origin);
    // about pi R^2 / spacing^2 = pi * 400 lattice points survive the disk cut
    CHECK(inside > 1200);
    CHECK(inside < 1400);
}

TEST_CASE("exact parameters: rescaled maps coincide bitwise with the limit") {
    // With B = 1, delta = 0 and powers of two in j_list, the rescaled
    // argument j (A/j + xi/j) rounds to exactly A + xi, so every deviation
    // is exactly zero -- not merely small.
    for (bool punctured : {true, false}) {
        CurveSpec spec = punctured ? punctured_curve() : plane_curve();
        RescalingRun run = make_rescaling_run(spec, kA, kB, 0.0, {8, 16, 32});
        auto rows = limit_identification(run);
        REQUIRE(rows.size() == 3);
        for (const auto& row : rows) {
            CHECK(row.dev_first_coord == 0.0);
            CHECK(row.dev_full_map == 0.0);
            CHECK(row.jrho_measured == 1.0);
        }
    }
}

TEST_CASE("exact parameters: center images collapse to the limit center") {
    RescalingRun run = make_rescaling_run(punctured_curve(), kA, kB, 0.0, {8, 16, 32});
    auto rows = limit_identification(run);
    for (const auto& row : rows) {
        // j * a_j == A bitwise, so the center image is exp(A) on the nose
        CHECK(row.center_image == std::exp(kA));
    }
}

TEST_CASE("first coordinate of the limit stays away from zero (punctured)") {
    RescalingRun run = make_rescaling_run(punctured_curve(), kA, kB, 0.0, {8, 16, 32});
    auto rows = limit_identification(run);
    double floor = std::exp(kA.real() - std::abs(kB) * run.grid.radius) / 2.0;
    for (const auto& row : rows) CHECK(row.min_modulus_first_coord >= floor);
}

TEST_CASE("perturbed radii: deviations decrease as j grows") {
    for (bool punctured : {true, false}) {
        CurveSpec spec = punctured ? punctured_curve() : plane_curve();
        RescalingRun run = make_rescaling_run(spec, kA, kB, 1.0, {8, 16, 32, 64});
        auto rows = limit_identification(run);
        REQUIRE(rows.size() == 4);
        for (size_t i = 0; i + 1 < rows.size(); ++i) {
            CHECK(rows[i].dev_first_coord > rows[i + 1].dev_first_coord);
            CHECK(rows[i].dev_full_map > rows[i + 1].dev_full_map);
            CHECK(rows[i].dev_full_map > 0.0);
        }
        // j rho_j = |B| + delta/j approaches |B| from above
        for (const auto& row : rows)
            CHECK(row.jrho_measured == doctest::Approx(1.0 + 1.0 / row.j).epsilon(1e-14));
    }
}

TEST_CASE("family members share F(0) bitwise") {
    CurveSpec spec = punctured_curve();
    std::vector<int> n_list{1, 2, 3, 17, 64};
    auto rep = check_not_compactly_divergent(spec, n_list);
    CHECK(rep.pass);
    REQUIRE(rep.f0.size() == 2);
    CHECK(rep.f0[0] == cplx{1.0, 0.0}); // e^0
    CHECK(rep.norm == doctest::Approx(std::sqrt(std::norm(rep.f0[0]) + std::norm(rep.f0[1]))));
}

TEST_CASE("family members are confined to the unit disk") {
    CurveSpec spec = plane_curve();
    CHECK_NOTHROW(family_member(spec, 5, cplx{0.99, 0.0}));
    try {
        family_member(spec, 5, cplx{1.0, 0.0});
        FAIL("expected Error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::invalid_argument);
    }
}

TEST_CASE("log-derivative of the first coordinate: analytic vs finite differences") {
    RescalingRun run = make_rescaling_run(punctured_curve(), kA, kB, 0.0, {8, 16, 32});
    for (int j : run.j_list) {
        cplx an = logderiv_first_analytic(run, j);
        CHECK(an == cplx{1.0, 0.0}); // j rho_j with the exact parameters
        for (cplx xi : {cplx{0, 0}, cplx{0.5, 0}, cplx{0, -0.5}, cplx{0.3, 0.4}}) {
            cplx fd = logderiv_first_fd(run, j, xi);
            CHECK(std::abs(fd - an) < 1e-8);
            CHECK(std::abs(fd.imag()) < 1e-8);
        }
    }
    // the diagnostic is tied to the exponential first coordinate
    RescalingRun prun = make_rescaling_run(plane_curve(), kA, kB, 0.0, {8});
    CHECK_THROWS_AS(logderiv_first_analytic(prun, 8), Error);
    CHECK_THROWS_AS(logderiv_first_fd(prun, 8, cplx{0, 0}), Error);
}

TEST_CASE("witness indices: first scaled bound to reach each cutoff") {
    SUBCASE("plane bounds 2j-1 pin the crossings") {
        CurveSpec spec = plane_curve();
        RescalingRun run = make_rescaling_run(spec, kA, kB, 0.0, {8, 16, 32});
        auto blowup = blowup_table(spec);
        auto rep = contradiction_witness(run, {5.0, 10.0, 15.0}, blowup);
        REQUIRE(rep.witnesses.size() == 3);
        CHECK(rep.witnesses[0].j == 3); // 2*3-1 = 5 >= 5
        CHECK(rep.witnesses[1].j == 6); // 11 >= 10
        CHECK(rep.witnesses[2].j == 8); // 15 >= 15
        for (const auto& w : rep.witnesses) {
            CHECK(w.bound_scaled >= w.c);
            CHECK(w.length_scaled >= w.bound_scaled * (1 - 1e-9));
        }
    }
    SUBCASE("punctured crossings") {
        CurveSpec spec = punctured_curve();
        RescalingRun run = make_rescaling_run(spec, kA, kB, 0.0, {8, 16, 32});
        auto blowup = blowup_table(spec);
        auto rep = contradiction_witness(run, {5.0, 10.0, 20.0}, blowup);
        REQUIRE(rep.witnesses.size() == 3);
        CHECK(rep.witnesses[0].j == 2);
        CHECK(rep.witnesses[1].j == 3);
        CHECK(rep.witnesses[2].j == 4);
    }
    SUBCASE("unreachable cutoff reports no witness") {
        CurveSpec spec = plane_curve();
        RescalingRun run = make_rescaling_run(spec, kA, kB, 0.0, {8});
        auto rep = contradiction_witness(run, {1e9}, blowup_table(spec));
        CHECK(rep.witnesses[0].j == 0);
    }
}

TEST_CASE("chain rule rows hold for complex B") {
    NodeSystem nodes = NodeSystem::explicit_list({{2, 0}, {8, 0}});
    CurveSpec spec = build_curve(CurveSpec::Variant::punctured, InnerCurve::exp_to_cstar(),
                                 MetricSpec::fs_p2(), nodes);
    RescalingRun run = make_rescaling_run(spec, cplx{0, 0}, cplx{0.6, 0.8}, 0.0, {4, 8});
    auto blowup = blowup_table(spec);
    auto rep = contradiction_witness(run, {0.5}, blowup);
    REQUIRE(rep.chain.size() == 2);
    for (const auto& cr : rep.chain) {
        CHECK(cr.rel_err <= 1e-9);
        CHECK(cr.g_side == doctest::Approx(cr.f_side).epsilon(1e-12));
    }
    CHECK(rep.witnesses[0].j == 1);
}

TEST_CASE("run construction rejects bad parameters") {
    CurveSpec spec = punctured_curve();
    auto expect_validation = [&](auto&& fn) {
        try {
            fn();
            FAIL("expected Error");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::validation);
        }
    };
    expect_validation([&] { make_rescaling_run(spec, kA, cplx{0, 0}, 0.0, {8}); });
    expect_validation([&] { make_rescaling_run(spec, kA, kB, 0.0, {}); });
    expect_validation([&] { make_rescaling_run(spec, kA, kB, 0.0, {8, 8}); });
    expect_validation([&] { make_rescaling_run(spec, kA, kB, 0.0, {16, 8}); });
    expect_validation([&] { make_rescaling_run(spec, kA, kB, 0.0, {0}); });
    expect_validation([&] { make_rescaling_run(spec, cplx{10, 0}, kB, 0.0, {8}); });
    expect_validation([&] { make_rescaling_run(spec, kA, kB, -16.0, {8}); });  // rho_8 < 0
    expect_validation([&] { make_rescaling_run(spec, kA, kB, 0.0, {2}); });    // disk escape
    expect_validation([&] { make_rescaling_run(spec, kA, kB, 0.0, {8}, {-1.0, 41}); });
    expect_validation([&] { make_rescaling_run(spec, kA, kB, 0.0, {8}, {2.0, 1}); });
    double nan = std::nan("");
    expect_validation([&] { make_rescaling_run(spec, cplx{nan, 0}, kB, 0.0, {8}); });
    expect_validation([&] { make_rescaling_run(spec, kA, kB, nan, {8}); });
}
