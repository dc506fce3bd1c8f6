#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>
#include <vector>

#include "ggt/growth.hpp"
#include "ggt/presets.hpp"

using namespace ggt;

namespace {

std::uint64_t pow3(int n) {
    std::uint64_t p = 1;
    for (int i = 0; i < n; ++i) p *= 3;
    return p;
}

}  // namespace

TEST_CASE("free group balls match the closed form B_n = 2*3^n - 1") {
    SphereTable t = enumerate_ball(preset_backend("f2"), 13);
    for (int n = 0; n <= 13; ++n)
        CHECK(t.cum[static_cast<std::size_t>(n)] == 2 * pow3(n) - 1);
}

TEST_CASE("growth estimate at radius 12 for the free group") {
    SphereTable t = enumerate_ball(preset_backend("f2"), 13);
    GrowthEstimate est = growth_rate_estimate(t);
    CHECK(est.report_radius == 12);
    double expected_hi = std::log(2.0 * 531441.0 - 1.0) / 12.0;  // ln(B_12)/12
    CHECK(est.inf_upper == Catch::Approx(expected_hi).epsilon(1e-13));
    CHECK(est.inf_upper == Catch::Approx(1.156372).margin(1e-5));
    // the ratio estimator sits within 1e-3 of ln 3
    CHECK(std::abs(est.extrapolated - std::log(3.0)) < 1e-3);
    // upper bounds are certified: every prefix minimum is >= the true rate
    for (int n = 1; n <= 12; ++n)
        CHECK(est.upper[static_cast<std::size_t>(n)] >= std::log(3.0));
}

TEST_CASE("rank-one free group: bracket trends to zero growth") {
    SphereTable t = enumerate_ball(preset_backend("z"), 21);
    for (int n = 0; n <= 21; ++n)
        CHECK(t.cum[static_cast<std::size_t>(n)] == 2 * static_cast<std::uint64_t>(n) + 1);
    CriticalBracket br = critical_bracket(t);
    CHECK(br.report_radius == 20);
    CHECK(br.hi_certified == Catch::Approx(std::log(41.0) / 20.0).epsilon(1e-13));
    CHECK(br.lo_heuristic == Catch::Approx(std::log(43.0 / 41.0)).epsilon(1e-13));
    CHECK(br.lo_heuristic <= 0.05);
}

TEST_CASE("free abelian plane: ratio estimator decays") {
    SphereTable t = enumerate_ball(preset_backend("z2"), 41);
    for (int n = 0; n <= 41; ++n) {
        std::uint64_t nn = static_cast<std::uint64_t>(n);
        CHECK(t.cum[static_cast<std::size_t>(n)] == 2 * nn * nn + 2 * nn + 1);
    }
    GrowthEstimate est = growth_rate_estimate(t);
    CHECK(est.report_radius == 40);
    CHECK(est.extrapolated == Catch::Approx(std::log(3445.0 / 3281.0)).epsilon(1e-13));
    CHECK(est.extrapolated < 0.05);
    CHECK(est.inf_upper == Catch::Approx(std::log(3281.0) / 40.0).epsilon(1e-13));
}

TEST_CASE("rewriting backend spheres match their closed form") {
    // normal forms of the order-2/order-3 free product alternate an 'a'
    // letter with a b-type letter, so b_{2k} = 2^{k+1} and b_{2k+1} = 3*2^k
    SphereTable t = enumerate_ball(preset_backend("z2z3"), 12);
    CHECK(t.b[0] == 1);
    for (int n = 1; n <= 12; ++n) {
        std::uint64_t expect = n % 2 == 0 ? (std::uint64_t{1} << (n / 2 + 1))
                                          : 3 * (std::uint64_t{1} << (n / 2));
        CHECK(t.b[static_cast<std::size_t>(n)] == expect);
    }
}

TEST_CASE("trivial group reports all zeros") {
    SphereTable t = enumerate_ball(GroupBackend::free_group(0), 6);
    GrowthEstimate est = growth_rate_estimate(t);
    CHECK(est.inf_upper == 0.0);
    CHECK(est.extrapolated == 0.0);
    for (int n = 1; n <= est.report_radius; ++n) {
        CHECK(est.upper[static_cast<std::size_t>(n)] == 0.0);
        CHECK(est.ratio[static_cast<std::size_t>(n)] == 0.0);
    }
}

TEST_CASE("truncated Poincare series: direct three-term check") {
    SphereTable t = enumerate_ball(preset_backend("f2"), 2);
    PoincareValue p = poincare_truncated(t, 2.0);
    double expect = 1.0 + 4.0 * std::exp(-2.0) + 12.0 * std::exp(-4.0);
    CHECK(p.series == Catch::Approx(expect).epsilon(1e-14));
    CHECK(p.series == Catch::Approx(1.761128).margin(1e-6));
    CHECK_THROWS_AS(poincare_truncated(t, 0.0), precondition_error);
}

TEST_CASE("only the identity survives at large exponent") {
    SphereTable t = enumerate_ball(preset_backend("f2"), 5);
    PoincareValue p = poincare_truncated(t, 40.0);
    CHECK(std::abs(p.series - 1.0) < 1e-12);
}

TEST_CASE("Abel identity for the truncated series") {
    SphereTable t = enumerate_ball(preset_backend("f2"), 10);
    double bR = static_cast<double>(t.cum[10]);
    for (double s : {0.5, 1.2, 3.0}) {
        PoincareValue p = poincare_truncated(t, s);
        double lhs = p.cumulative * (1.0 - std::exp(-s));
        double rhs = p.series - bR * std::exp(-s * 11.0);
        CHECK(std::abs(lhs - rhs) < 1e-12);
    }
}

TEST_CASE("ball counts are submultiplicative") {
    for (const char* name : {"f2", "z2", "z2z3"}) {
        SphereTable t = enumerate_ball(preset_backend(name), 12);
        for (int n = 0; n <= 12; ++n)
            for (int m = 0; n + m <= 12; ++m) {
                INFO(name << " n=" << n << " m=" << m);
                CHECK(t.cum[static_cast<std::size_t>(n + m)] <=
                      t.cum[static_cast<std::size_t>(n)] *
                          t.cum[static_cast<std::size_t>(m)]);
            }
    }
}

TEST_CASE("balls dominate the exponential of the known growth rate") {
    struct Case {
        const char* name;
        double delta;
    };
    for (Case c : {Case{"f2", std::log(3.0)}, Case{"z2", 0.0},
                   Case{"z2z3", std::log(2.0) / 2.0}}) {
        SphereTable t = enumerate_ball(preset_backend(c.name), 12);
        for (int n = 0; n <= 12; ++n)
            CHECK(static_cast<double>(t.cum[static_cast<std::size_t>(n)]) >=
                  std::exp(c.delta * n) * (1.0 - 1e-12));
    }
}

TEST_CASE("covering subsets sandwich the full series") {
    // A = even-length elements; every element is within distance 1 of A, so
    // sum_A <= sum_G <= B_1 e^s sum_A at any truncation radius.
    GroupBackend b = preset_backend("f2");
    SphereTable t = enumerate_ball(b, 6);
    double m = static_cast<double>(t.cum[1]);
    for (double s : {0.5, 1.0}) {
        double sum_a = 0.0, sum_g = 0.0;
        for (int n = 0; n <= 6; ++n) {
            double term = static_cast<double>(t.b[static_cast<std::size_t>(n)]) *
                          std::exp(-s * n);
            sum_g += term;
            if (n % 2 == 0) sum_a += term;
        }
        CHECK(sum_a <= sum_g);
        CHECK(sum_g <= m * std::exp(s) * sum_a);
    }
}

TEST_CASE("growth CSV layout") {
    SphereTable t = enumerate_ball(preset_backend("z"), 3);
    GrowthEstimate est = growth_rate_estimate(t);
    std::string csv = growth_csv(t, est);
    CHECK(csv.rfind("n,b_n,B_n,upper_n,ratio_n\n", 0) == 0);
    CHECK(csv.find("0,1,1,,") != std::string::npos);
}

TEST_CASE("preconditions") {
    SphereTable t1 = enumerate_ball(preset_backend("z"), 1);
    CHECK_THROWS_AS(growth_rate_estimate(t1), precondition_error);
    SphereTable t4 = enumerate_ball(preset_backend("z"), 4);
    CHECK_THROWS_AS(critical_bracket(t4), precondition_error);
}
