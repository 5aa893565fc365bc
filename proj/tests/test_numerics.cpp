#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "filtrate/errors.hpp"
#include "filtrate/numerics.hpp"
#include "oracles.hpp"

using namespace filtrate;

TEST_CASE("adaptive quadrature on smooth integrands") {
    auto r = num::integrate_adaptive([](double x) { return x * x; }, 0.0, 1.0);
    CHECK(oracles::rel_err(r.value, 1.0 / 3.0) < 1e-14);

    r = num::integrate_adaptive([](double x) { return std::exp(x); }, -1.0, 2.0);
    CHECK(oracles::rel_err(r.value, std::exp(2.0) - std::exp(-1.0)) < 1e-13);

    // Reversed bounds flip the sign.
    r = num::integrate_adaptive([](double x) { return std::exp(x); }, 2.0, -1.0);
    CHECK(oracles::rel_err(r.value, -(std::exp(2.0) - std::exp(-1.0))) < 1e-13);
}

TEST_CASE("adaptive quadrature resolves an integrable endpoint singularity") {
    const auto r = num::integrate_adaptive([](double x) { return 1.0 / std::sqrt(x); }, 0.0,
                                           1.0, 1e-10, 1e-10);
    CHECK(oracles::rel_err(r.value, 2.0) < 1e-9);
    CHECK(r.max_depth > 10);  // needed real subdivision near 0
}

TEST_CASE("quadrature zero-length interval") {
    const auto r = num::integrate_adaptive([](double x) { return x; }, 1.5, 1.5);
    CHECK(r.value == 0.0);
}

TEST_CASE("ode integrator against closed forms") {
    // dy/dx = y -> e^x.
    auto f = [](double, double y) { return y; };
    const double got = num::integrate_ode(f, 0.0, 1.0, 1.0, {1e-10, 1e-12, 0.0, false});
    CHECK(oracles::rel_err(got, std::exp(1.0)) < 1e-9);

    // Linear RHS, backward direction.
    auto g = [](double x, double) { return -x; };
    const double back = num::integrate_ode(g, 2.0, 1.0, 1.0, {1e-10, 1e-12, 0.0, false});
    CHECK(oracles::rel_err(back, 1.0 + (4.0 - 1.0) / 2.0) < 1e-9);

    // Zero span.
    CHECK(num::integrate_ode(f, 1.0, 3.5, 1.0) == 3.5);
}

TEST_CASE("ode positivity stop reports the crossing") {
    // y' = -1 from y(0) = 1 crosses zero at x = 1.
    auto f = [](double, double) { return -1.0; };
    num::OdeOptions opts;
    opts.require_positive = true;
    try {
        num::integrate_ode(f, 0.0, 1.0, 2.0, opts);
        FAIL("expected a positivity stop");
    } catch (const NumericError& e) {
        const double x_cross = std::stod(e.diagnostics());
        CHECK(std::fabs(x_cross - 1.0) < 1e-6);
    }
}

TEST_CASE("bisection and sign scan") {
    auto f = [](double x) { return x * x - 2.0; };
    const double root = num::bisect_root(f, 0.0, 2.0, 1e-14);
    CHECK(oracles::rel_err(root, std::sqrt(2.0)) < 1e-13);

    const auto brackets =
        num::sign_change_brackets([](double x) { return std::sin(x); },
                                  num::linspace(0.5, 7.0, 200));
    REQUIRE(brackets.size() == 2);  // pi and 2 pi

    CHECK_THROWS_AS(num::bisect_root(f, 3.0, 4.0), NumericError);
}

TEST_CASE("damped 2-d newton") {
    // x^2 + y^2 = 2, x = y -> (1, 1).
    auto F = [](double x, double y) {
        return std::make_pair(x * x + y * y - 2.0, x - y);
    };
    auto J = [](double x, double y) -> std::array<double, 4> {
        return {2 * x, 2 * y, 1.0, -1.0};
    };
    const auto r = num::newton_2d(F, J, 3.0, 0.5);
    CHECK(r.converged);
    CHECK(oracles::rel_err(r.x1, 1.0) < 1e-12);
    CHECK(oracles::rel_err(r.x2, 1.0) < 1e-12);
}

TEST_CASE("logspace endpoints and monotonicity") {
    const auto xs = num::logspace(0.01, 100.0, 17);
    CHECK(xs.front() == doctest::Approx(0.01));
    CHECK(xs.back() == doctest::Approx(100.0));
    for (std::size_t i = 1; i < xs.size(); ++i) CHECK(xs[i] > xs[i - 1]);
    CHECK_THROWS_AS(num::logspace(0.0, 1.0, 4), DomainError);
}
