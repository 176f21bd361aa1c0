#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "fracgs/model.hpp"
#include "support.hpp"

using namespace fracgs;
using fracgs::test::rel_err;

namespace {

NonlinearitySpec critical_spec(double q = 4.0, double mu = 3.0, double theta = 1.0,
                               double alpha0 = 1.0) {
    NonlinearitySpec nl;
    nl.q = q;
    nl.mu = mu;
    nl.theta = theta;
    nl.alpha0 = alpha0;
    nl.mode = NonlinearityMode::critical;
    return nl;
}

NonlinearitySpec power_spec(double q = 4.0, double theta = 1.0) {
    NonlinearitySpec nl = critical_spec(q);
    nl.theta = theta;
    nl.mode = NonlinearityMode::pure_power;
    return nl;
}

}  // namespace

TEST_CASE("f_eval: closed-form values") {
    CHECK(f_eval(critical_spec(), 0.0) == 0.0);
    CHECK(f_eval(power_spec(), 0.0) == 0.0);
    // theta q |s|^(q-2) s at q=4, theta=1, s=2: 4*4*2
    CHECK(f_eval(power_spec(), 2.0) == doctest::Approx(32.0));
}

TEST_CASE("f is odd, exactly, on sampled values") {
    const NonlinearitySpec nl = critical_spec();
    for (double s : {1e-6, 1e-3, 0.3, 1.0, 2.5, 7.0}) {
        CHECK(f_eval(nl, -s) == -f_eval(nl, s));
    }
}

TEST_CASE("f(s)/s vanishes at the origin and grows monotonically") {
    const NonlinearitySpec nl = critical_spec();
    CHECK(std::abs(f_eval(nl, 1e-4) / 1e-4) < 1e-6);
    double prev = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double s = std::pow(10.0, -5.0 + 6.0 * i / 199.0);
        const double quot = f_eval(nl, s) / s;
        CHECK(quot > prev);
        prev = quot;
    }
}

TEST_CASE("F is the primitive of f (quadrature cross-check)") {
    const NonlinearitySpec nl = critical_spec();
    // Simpson on [0, s] against the closed form.
    const double s = 1.3;
    const int n = 2000;
    const double h = s / n;
    double acc = f_eval(nl, 0.0) + f_eval(nl, s);
    for (int i = 1; i < n; ++i) acc += f_eval(nl, h * i) * (i % 2 ? 4.0 : 2.0);
    const double quad = acc * h / 3.0;
    CHECK(rel_err(quad, F_eval(nl, s)) < 1e-10);
}

TEST_CASE("fprime matches centered differences") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> us(0.05, 2.0);
    const NonlinearitySpec nl = critical_spec();
    CHECK(rel_err(fprime_eval(nl, 0.7),
                  (f_eval(nl, 0.7 + 1e-6) - f_eval(nl, 0.7 - 1e-6)) / 2e-6) < 1e-6);
    for (int i = 0; i < 100; ++i) {
        const double s = us(rng) * (i % 2 ? 1.0 : -1.0);
        const double h = 1e-5 * std::max(1.0, std::abs(s));
        const double fd = (f_eval(nl, s + h) - f_eval(nl, s - h)) / (2.0 * h);
        CHECK(rel_err(fprime_eval(nl, s), fd) < 1e-6);
    }
}

TEST_CASE("AR ratio and lower bound hold for admissible mu") {
    const NonlinearitySpec nl = critical_spec();
    for (int i = 0; i < 100; ++i) {
        const double s = std::pow(10.0, -4.0 + 5.0 * i / 99.0);
        CHECK(nl.mu * F_eval(nl, s) <= f_eval(nl, s) * s * (1.0 + 1e-12));
        CHECK(F_eval(nl, s) >= nl.theta * std::pow(s, nl.q) * (1.0 - 1e-12));
    }
}

TEST_CASE("phi: zero at origin, positive away, shrinking down rays") {
    const NonlinearitySpec nl = critical_spec();
    CHECK(phi_eval(nl, 0.0) == 0.0);
    CHECK(phi_eval(power_spec(), 1.0) == doctest::Approx(2.0));  // 4 - 2
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> us(0.01, 3.0);
    std::uniform_real_distribution<double> ut(0.01, 0.99);
    for (int i = 0; i < 200; ++i) {
        const double s = us(rng) * (i % 2 ? 1.0 : -1.0);
        const double t = ut(rng);
        CHECK(phi_eval(nl, s) > 0.0);
        CHECK(phi_eval(nl, s) > phi_eval(nl, t * s));
    }
}

TEST_CASE("the ray integrand f(ts)s/t increases in t") {
    const NonlinearitySpec nl = critical_spec();
    for (double s : {0.3, -0.9, 2.0}) {
        double prev = -1e300;
        for (int i = 0; i < 100; ++i) {
            const double t = std::pow(10.0, -2.0 + 3.0 * i / 99.0);
            const double val = f_eval(nl, t * s) * s / t;
            CHECK(val > prev);
            prev = val;
        }
    }
}

TEST_CASE("overflow guard trips instead of returning infinities") {
    const NonlinearitySpec nl = critical_spec();
    CHECK_THROWS_AS(f_eval(nl, 27.0), std::overflow_error);
    CHECK_THROWS_AS(F_eval(nl, 27.0), std::overflow_error);
    CHECK_THROWS_AS(fprime_eval(nl, 27.0), std::overflow_error);
    CHECK_NOTHROW(f_eval(power_spec(), 27.0));  // no exponential term
}

TEST_CASE("validate_nonlinearity: default critical spec passes all") {
    const ValidationReport rep = validate_nonlinearity(critical_spec());
    CHECK(rep.all_passed());
    CHECK(rep.find("CG") != nullptr);
    CHECK_FALSE(rep.find("CG")->skipped);
}

TEST_CASE("validate_nonlinearity: mu above q breaks the AR inequality") {
    NonlinearitySpec bad = critical_spec();
    bad.mu = bad.q + 1.0;
    const ValidationReport rep = validate_nonlinearity(bad);
    CHECK_FALSE(rep.all_passed());
    REQUIRE(rep.find("H3") != nullptr);
    CHECK_FALSE(rep.find("H3")->passed);

    NonlinearitySpec bad_pp = power_spec();
    bad_pp.mu = bad_pp.q + 1.0;
    const ValidationReport rep_pp = validate_nonlinearity(bad_pp);
    REQUIRE(rep_pp.find("H3") != nullptr);
    CHECK_FALSE(rep_pp.find("H3")->passed);
}

TEST_CASE("validate_nonlinearity: oracle mode skips the growth check") {
    const ValidationReport rep = validate_nonlinearity(power_spec());
    REQUIRE(rep.find("CG") != nullptr);
    CHECK(rep.find("CG")->skipped);
    CHECK(rep.find("CG")->detail == "skipped: oracle mode");
}

TEST_CASE("validate_potentials: default family passes with the expected V3 margin") {
    const GridPtr g = make_grid(8.0, 256);
    const PotentialSet pot = build_periodic_potentials(g, PeriodicFamilyParams{});
    const ValidationReport rep = validate_potentials(pot);
    CHECK(rep.all_passed());
    // min over the grid of (0.6-0.5) sqrt(V1 V2) = 0.1 sqrt(2)
    CHECK(rep.find("V3")->margin == doctest::Approx(0.1 * std::sqrt(2.0)).epsilon(1e-6));
}

TEST_CASE("validate_potentials: coupling beyond delta sqrt(V1 V2) fails V3") {
    const GridPtr g = make_grid(8.0, 256);
    PeriodicFamilyParams p;
    p.lambda_factor = 1.0;
    p.delta = 0.9;
    const PotentialSet pot = build_periodic_potentials(g, p);
    const ValidationReport rep = validate_potentials(pot);
    REQUIRE(rep.find("V3") != nullptr);
    CHECK_FALSE(rep.find("V3")->passed);
}

TEST_CASE("validate_potentials: delta outside (0,1) is a named V3 failure") {
    const GridPtr g = make_grid(8.0, 256);
    PeriodicFamilyParams p;
    p.delta = 1.2;
    const PotentialSet pot = build_periodic_potentials(g, p);
    const ValidationReport rep = validate_potentials(pot);
    REQUIRE(rep.find("V3") != nullptr);
    CHECK_FALSE(rep.find("V3")->passed);
    CHECK(rep.find("V3")->detail == "delta must lie in (0,1)");
}

TEST_CASE("validate_potentials: non-periodic V1 is caught") {
    const GridPtr g = make_grid(8.0, 256);
    PotentialSet pot = build_periodic_potentials(g, PeriodicFamilyParams{});
    pot.V1 = sample(g, [](double x) { return x + 10.0; });
    const ValidationReport rep = validate_potentials(pot);
    REQUIRE(rep.find("V1") != nullptr);
    CHECK_FALSE(rep.find("V1")->passed);
}

TEST_CASE("asymptotic family: default bump validates, oversized bump fails V6") {
    const GridPtr g = make_grid(8.0, 256);
    const PotentialSet periodic = make_periodic_potentials(g, PeriodicFamilyParams{});

    const PotentialSet ok = make_asymptotic_potentials(periodic, BumpParams{});
    CHECK(validate_potentials(ok).all_passed());

    BumpParams big;
    big.b = 0.5;  // pushes lambdat past delta sqrt(Vt1 Vt2)
    const PotentialSet bad = build_asymptotic_potentials(periodic, big);
    const ValidationReport rep = validate_potentials(bad);
    REQUIRE(rep.find("V6") != nullptr);
    CHECK_FALSE(rep.find("V6")->passed);
    CHECK_THROWS_AS(make_asymptotic_potentials(periodic, big), std::invalid_argument);
}

TEST_CASE("asymptotic family: zero bump violates strict ordering") {
    const GridPtr g = make_grid(8.0, 256);
    const PotentialSet periodic = make_periodic_potentials(g, PeriodicFamilyParams{});
    BumpParams zero;
    zero.a1 = zero.a2 = zero.b = 0.0;
    CHECK_THROWS_AS(make_asymptotic_potentials(periodic, zero), std::invalid_argument);
}

TEST_CASE("theta0: hand-computed value") {
    // delta=0.5, mu=3, q=4, alpha0=1, omega=pi/4, kappa=0.5, S_q=1 gives 6/pi.
    const double v = theta0(0.5, 3.0, 4.0, 1.0, M_PI / 4.0, 0.5, 1.0);
    CHECK(v == doctest::Approx(6.0 / M_PI).epsilon(1e-12));
}

TEST_CASE("theta0: increasing in delta") {
    double prev = 0.0;
    for (double d : {0.1, 0.3, 0.5, 0.7, 0.9, 0.99}) {
        const double v = theta0(d, 3.0, 4.0, 1.0, M_PI / 4.0, 0.5, 1.0);
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("theta0: q -> 2 limit collapses the inner power") {
    const double sq = 1.7;
    const double limit = sq * sq / 2.0;
    const double v = theta0(0.5, 3.0, 2.0 + 1e-9, 1.0, M_PI / 4.0, 0.5, sq);
    CHECK(rel_err(v, limit) < 1e-6);
}

TEST_CASE("theta0: domain violations throw") {
    CHECK_THROWS_AS(theta0(1.2, 3.0, 4.0, 1.0, 0.7, 0.5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(theta0(0.5, 2.0, 4.0, 1.0, 0.7, 0.5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(theta0(0.5, 3.0, 2.0, 1.0, 0.7, 0.5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(theta0(0.5, 3.0, 4.0, -1.0, 0.7, 0.5, 1.0), std::invalid_argument);
}
