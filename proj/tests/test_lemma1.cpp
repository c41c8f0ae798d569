#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "brodyforge/error.hpp"
#include "brodyforge/products.hpp"
#include "support/oracles.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

using namespace brodyforge;

namespace {
std::vector<double> power_seq(double p, int N, double amp = 1.0) {
    std::vector<double> c;
    c.reserve(static_cast<size_t>(N));
    for (int n = 1; n <= N; ++n) c.push_back(amp / std::pow(n, p));
    return c;
}
} // namespace

TEST_CASE("inverse squares: both scales converge, product hits sinh(pi)/pi") {
    const int N = 10000;
    auto rep = lemma1_classify(power_seq(2.0, N));
    CHECK(rep.verdict == Verdict::both_converge);
    REQUIRE(rep.partial_products_plus.size() == static_cast<size_t>(N));
    double limit = std::sinh(pi) / pi; // prod_{n>=1} (1 + 1/n^2)
    CHECK(std::abs(rep.partial_products_plus.back() - limit) < 1e-3);
    // c_1 = 1 kills the minus product at the first factor
    CHECK(rep.partial_products_minus.front() == 0.0);
    CHECK(rep.partial_products_minus.back() == 0.0);
}

TEST_CASE("harmonic: both scales diverge, plus-product telescopes to N+1") {
    const int N = 10000;
    auto rep = lemma1_classify(power_seq(1.0, N));
    CHECK(rep.verdict == Verdict::both_diverge);
    // prod (1 + 1/n) = N + 1 exactly in the limit of exact arithmetic
    CHECK(std::abs(rep.partial_products_plus.back() - (N + 1)) < 1e-9 * N);
    for (double v : rep.partial_products_minus) CHECK(v == 0.0);
}

TEST_CASE("shifted harmonic telescopes: minus partials are 1/(m+1)") {
    const int N = 1000;
    std::vector<double> c;
    for (int i = 1; i <= N; ++i) c.push_back(1.0 / (i + 1)); // starts at 1/2
    auto rep = lemma1_classify(c);
    CHECK(rep.verdict == Verdict::both_diverge);
    for (int m = 1; m <= N; ++m) {
        double want = 1.0 / (m + 1);
        double got = rep.partial_products_minus[static_cast<size_t>(m - 1)];
        CHECK(std::abs(got - want) <= 1e-12 * want);
    }
}

TEST_CASE("geometric halving converges on both scales") {
    std::vector<double> c;
    double v = 0.5;
    for (int n = 0; n < 60; ++n, v *= 0.5) c.push_back(v);
    auto rep = lemma1_classify(c);
    CHECK(rep.verdict == Verdict::both_converge);
    CHECK(rep.partial_sums.back() == doctest::Approx(1.0).epsilon(1e-12));
    // prod (1 - 2^-n) stays bounded away from 0 when the sum converges
    CHECK(rep.partial_products_minus.back() > 0.28);
}

TEST_CASE("sum and product scales never disagree on random power/geometric data") {
    testsupport::Rng rng(55);
    const int N = 1500;
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> c;
        double amp = rng.uniform(0.05, 2.0);
        if (trial % 3 == 0) {
            double ratio = rng.uniform(0.2, 0.9);
            double v = amp;
            for (int n = 0; n < N; ++n, v *= ratio) c.push_back(std::max(v, 1e-300));
        } else {
            bool summable = trial % 2 == 0;
            double p = summable ? rng.uniform(1.5, 3.0) : rng.uniform(0.3, 1.0);
            c = power_seq(p, N, amp);
        }
        auto rep = lemma1_classify(c);
        CHECK(rep.verdict != Verdict::inconsistent);
    }
}

TEST_CASE("verdict names are stable") {
    CHECK(std::string(to_string(Verdict::both_converge)) == "both-converge");
    CHECK(std::string(to_string(Verdict::both_diverge)) == "both-diverge");
    CHECK(std::string(to_string(Verdict::inconsistent)) == "inconsistent");
}

TEST_CASE("input validation") {
    auto expect_invalid = [](const std::vector<double>& c) {
        try {
            lemma1_classify(c);
            FAIL("expected Error");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::invalid_argument);
        }
    };
    expect_invalid({});
    expect_invalid({0.5, 0.0, 0.25});
    expect_invalid({0.5, -0.1});
    expect_invalid({0.5, std::numeric_limits<double>::quiet_NaN()});
    expect_invalid({0.5, std::numeric_limits<double>::infinity()});
}

TEST_CASE("report columns stay aligned") {
    auto rep = lemma1_classify({0.5, 0.25, 0.125});
    REQUIRE(rep.partial_sums.size() == 3);
    REQUIRE(rep.partial_products_plus.size() == 3);
    REQUIRE(rep.partial_products_minus.size() == 3);
    CHECK(rep.partial_sums[0] == 0.5);
    CHECK(rep.partial_products_plus[0] == 1.5);
    CHECK(rep.partial_products_minus[0] == 0.5);
    CHECK(rep.partial_sums[2] == doctest::Approx(0.875));
    CHECK(rep.partial_products_plus[2] == doctest::Approx(1.5 * 1.25 * 1.125));
    CHECK(rep.partial_products_minus[2] == doctest::Approx(0.5 * 0.75 * 0.875));
}
