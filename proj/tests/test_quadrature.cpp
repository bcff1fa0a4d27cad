#include <doctest.h>

#include <cmath>
#include <numbers>

#include "crsched/error.hpp"
#include "crsched/quadrature.hpp"

using namespace crsched;

TEST_CASE("integrate on finite intervals") {
    CHECK(integrate([](double x) { return x * x; }, 0, 1).value == doctest::Approx(1.0 / 3).epsilon(1e-14));
    CHECK(integrate([](double x) { return std::sin(x); }, 0, std::numbers::pi).value ==
          doctest::Approx(2.0).epsilon(1e-13));
    CHECK(integrate([](double) { return 1.0; }, 2, 2).value == 0.0);

    // Sharp peak forces subdivision.
    const auto peak = integrate([](double x) { return 1e-4 / (1e-8 + (x - 0.3) * (x - 0.3)); }, 0, 1);
    const double exact = std::atan(0.7 / 1e-4) + std::atan(0.3 / 1e-4);
    CHECK(peak.value == doctest::Approx(exact).epsilon(1e-9));
    CHECK(peak.subdivisions > 0);
    CHECK(peak.error <= 1e-9 * peak.value);
}

TEST_CASE("integrate_half_line") {
    CHECK(integrate_half_line([](double y) { return std::exp(-y); }, 1.0).value ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(integrate_half_line([](double y) { return 1.0 / (1 + y * y); }, 1.0).value ==
          doctest::Approx(std::numbers::pi / 2).epsilon(1e-12));
    // y^-2 tail, the decay of the selection integrands.
    CHECK(integrate_half_line([](double y) { return 1.0 / ((1 + 3 * y) * (1 + 3 * y)); }, 0.5).value ==
          doctest::Approx(1.0 / 3).epsilon(1e-12));

    CHECK_THROWS_AS(integrate_half_line([](double) { return 0.0; }, 0.0), crsched::domain_error);
}

TEST_CASE("non-convergence reports the best estimate") {
    quadrature_config cfg;
    cfg.max_subdivisions = 2;
    try {
        integrate([](double x) { return 1e-6 / (1e-12 + (x - 0.123) * (x - 0.123)); }, 0, 1, cfg);
        FAIL("expected convergence_failure");
    } catch (const convergence_failure& e) {
        CHECK(std::isfinite(e.estimate()));
        CHECK(e.error_bound() > cfg.abs_tol);
    }
}

TEST_CASE("config validation") {
    quadrature_config cfg;
    cfg.abs_tol = 0;
    CHECK_THROWS_AS(cfg.validate(), crsched::domain_error);
    cfg = {};
    cfg.max_subdivisions = 0;
    CHECK_THROWS_AS(integrate([](double x) { return x; }, 0, 1, cfg), crsched::domain_error);
}
