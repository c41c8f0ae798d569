#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "brodyforge/error.hpp"
#include "brodyforge/geometry.hpp"
#include "support/oracles.hpp"

#include <cmath>
#include <vector>

using namespace brodyforge;
using namespace testsupport;

namespace {
std::vector<cplx> vec2(cplx a, cplx b) { return {a, b}; }
} // namespace

TEST_CASE("euclidean length is the l2 norm, base point ignored") {
    MetricSpec e2 = MetricSpec::euclidean(2);
    CHECK(length(e2, vec2({7, -2}, {0, 3}), vec2({3, 4}, {0, 0})) == doctest::Approx(5.0));
    MetricSpec e1 = MetricSpec::euclidean(1);
    CHECK(length(e1, {{0, 0}}, {{0, -2}}) == doctest::Approx(2.0));
    MetricSpec e4 = MetricSpec::euclidean(4);
    std::vector<cplx> v{{1, 0}, {0, 1}, {1, 1}, {-1, 1}};
    CHECK(length(e4, std::vector<cplx>(4), v) == doctest::Approx(std::sqrt(6.0)));
}

TEST_CASE("chart metric at the origin reduces to euclidean") {
    MetricSpec fs = MetricSpec::fs_p2();
    MetricSpec e2 = MetricSpec::euclidean(2);
    Rng rng(31);
    for (int i = 0; i < 50; ++i) {
        std::vector<cplx> v = vec2(rng.box(3.0), rng.box(3.0));
        std::vector<cplx> origin = vec2({0, 0}, {0, 0});
        CHECK(std::abs(length(fs, origin, v) - length(e2, origin, v)) <=
              1e-15 * length(e2, origin, v));
    }
}

TEST_CASE("known value: unit vector at unit base along the same axis") {
    // p = (1,0), v = (1,0): length^2 = (2*1 - 1)/4 = 1/4.
    MetricSpec fs = MetricSpec::fs_p2();
    double got = length(fs, vec2({1, 0}, {0, 0}), vec2({1, 0}, {0, 0}));
    CHECK(got == doctest::Approx(0.5).epsilon(1e-15));
    // orthogonal direction at the same base: length^2 = 2/4
    double got_perp = length(fs, vec2({1, 0}, {0, 0}), vec2({0, 0}, {1, 0}));
    CHECK(got_perp == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
}

TEST_CASE("chart formula matches the homogeneous-coordinate pullback") {
    MetricSpec fs = MetricSpec::fs_p2();
    Rng rng(32);
    for (int i = 0; i < 200; ++i) {
        std::vector<cplx> p = vec2(rng.box(4.0), rng.box(4.0));
        std::vector<cplx> v = vec2(rng.box(4.0), rng.box(4.0));
        double got = length(fs, p, v);
        double want = fs_length_homog(p, v);
        CHECK(std::abs(got - want) <= 1e-12 * std::max(1.0, want));
    }
}

TEST_CASE("chart metric never exceeds the euclidean length") {
    MetricSpec fs = MetricSpec::fs_p2();
    MetricSpec e2 = MetricSpec::euclidean(2);
    Rng rng(33);
    for (int i = 0; i < 200; ++i) {
        std::vector<cplx> p = vec2(rng.box(5.0), rng.box(5.0));
        std::vector<cplx> v = vec2(rng.box(5.0), rng.box(5.0));
        CHECK(length(fs, p, v) <= length(e2, p, v) * (1 + 1e-14));
    }
}

TEST_CASE("absolute homogeneity and phase invariance") {
    MetricSpec fs = MetricSpec::fs_p2();
    Rng rng(34);
    for (int i = 0; i < 100; ++i) {
        std::vector<cplx> p = vec2(rng.box(3.0), rng.box(3.0));
        std::vector<cplx> v = vec2(rng.box(3.0), rng.box(3.0));
        double base_len = length(fs, p, v);

        cplx c = rng.box(2.0);
        std::vector<cplx> cv = vec2(c * v[0], c * v[1]);
        CHECK(std::abs(length(fs, p, cv) - std::abs(c) * base_len) <=
              1e-12 * std::max(1.0, std::abs(c) * base_len));

        double theta = rng.uniform(0, 2 * pi);
        cplx u = std::polar(1.0, theta);
        std::vector<cplx> uv = vec2(u * v[0], u * v[1]);
        CHECK(std::abs(length(fs, p, uv) - base_len) <= 1e-12 * std::max(1.0, base_len));
    }
}

TEST_CASE("reverse triangle inequality holds up to rounding") {
    Rng rng(35);
    for (MetricSpec m : {MetricSpec::fs_p2(), MetricSpec::euclidean(2)}) {
        for (int i = 0; i < 200; ++i) {
            std::vector<cplx> p = vec2(rng.box(3.0), rng.box(3.0));
            std::vector<cplx> v1 = vec2(rng.box(3.0), rng.box(3.0));
            std::vector<cplx> v2 = vec2(rng.box(3.0), rng.box(3.0));
            CHECK(triangle_gap(m, p, v1, v2) >= -1e-12);
        }
    }
}

TEST_CASE("constructor and input validation") {
    CHECK_THROWS_AS(MetricSpec::euclidean(0), Error);
    CHECK(MetricSpec::euclidean(7).dim() == 7);
    CHECK(MetricSpec::fs_p2().dim() == 2);

    MetricSpec fs = MetricSpec::fs_p2();
    auto expect_invalid = [&](const std::vector<cplx>& base, const std::vector<cplx>& v) {
        try {
            length(fs, base, v);
            FAIL("expected Error");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::invalid_argument);
        }
    };
    expect_invalid({{1, 0}}, vec2({1, 0}, {0, 0}));            // base dim
    expect_invalid(vec2({1, 0}, {0, 0}), {{1, 0}});            // vector dim
    double nan = std::nan("");
    expect_invalid(vec2({nan, 0}, {0, 0}), vec2({1, 0}, {0, 0}));
    expect_invalid(vec2({1, 0}, {0, 0}), vec2({1, 0}, {0, nan}));
}
