#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "crsched/error.hpp"
#include "crsched/scenario_io.hpp"

using namespace crsched;

namespace {

load_error load_failure(const std::string& text) {
    try {
        parse_scenario(text, "t");
    } catch (const load_error& e) {
        return e;
    }
    FAIL("expected load_error");
    return load_error("", 0, "");
}

}  // namespace

TEST_CASE("minimal document gets defaults") {
    const auto f = parse_scenario(R"({"users": [{"d_sd": 1, "d_sp": 2}, {"d_sd": 2, "d_sp": 2}]})", "min");
    CHECK(f.sc.users.size() == 2);
    CHECK(f.sc.beta == 3.0);
    CHECK(f.sc.trials == 1'000'000);
    CHECK(f.sc.power == power_mode::approx);
    CHECK(f.methods.closed_form);
    CHECK(f.methods.quadrature);
    CHECK(f.methods.monte_carlo);
    CHECK(f.format == output_format::json);
    CHECK(f.sc.users[0].alpha == doctest::Approx(0.125));
}

TEST_CASE("all keys") {
    const auto f = parse_scenario(R"({
        // comments are allowed
        "users": [{"d_sd": 1, "d_sp": 2}, {"d_sd": 2, "d_sp": 2}, {"d_sd": 3, "d_sp": 2}],
        "beta": 4,
        "trials": 5000,
        "seed": 9,
        "method": "quadrature",
        "power_mode": "exact",
        "primary": {"p_u": 0.5, "p_a": 2, "p_m": 20, "eta0": 0.1, "delta_pd_sq": 0.3},
        "format": "csv"
    })", "full");
    CHECK(f.sc.users.size() == 3);
    CHECK(f.sc.beta == 4.0);
    CHECK(f.sc.users[0].alpha == doctest::Approx(1.0 / 16));
    CHECK(f.sc.trials == 5000);
    CHECK(f.sc.seed == 9);
    CHECK(f.sc.power == power_mode::exact);
    CHECK(f.sc.primary.p_u == 0.5);
    CHECK(f.sc.primary.delta_pd_sq == 0.3);
    CHECK(f.format == output_format::csv);
    CHECK_FALSE(f.methods.closed_form);
    CHECK(f.methods.quadrature);
}

TEST_CASE("invalid documents name the field and line") {
    auto e = load_failure("{\n \"users\": [\n  {\"d_sd\": 1, \"d_sp\": 2},\n  {\"d_sd\": 0, \"d_sp\": 2}\n ]\n}");
    CHECK(e.field() == "users[1].d_sd");
    CHECK(e.line() == 4);
    CHECK(std::string(e.what()).find("d_sd") != std::string::npos);

    e = load_failure("{\n \"users\": [{\"d_sd\": 1, \"d_sp\": 2}, {\"d_sd\": 1, \"d_sp\": 2}],\n \"colour\": 3\n}");
    CHECK(e.field() == "colour");
    CHECK(e.line() == 3);

    e = load_failure(R"({"users": [{"d_sd": 1, "d_sp": 2, "x": 1}, {"d_sd": 1, "d_sp": 2}]})");
    CHECK(e.field() == "users[0].x");

    e = load_failure(R"({"users": [{"d_sd": 1, "d_sp": 2}], "beta": 3})");
    CHECK(e.field() == "users");

    e = load_failure(R"({"users": [{"d_sd": 1, "d_sp": 2}, {"d_sd": 1, "d_sp": 2}], "method": "guess"})");
    CHECK(e.field() == "method");

    e = load_failure(R"({"users": [{"d_sd": 1, "d_sp": 2}, {"d_sd": 1, "d_sp": 2}], "trials": 0})");
    CHECK(e.field() == "trials");

    e = load_failure(R"({"users": [{"d_sd": 1, "d_sp": 2}, {"d_sd": 1, "d_sp": 2}], "primary": {"eta0": 0}})");
    CHECK(e.field() == "primary");

    e = load_failure(R"({"users": [{"d_sd": 1, "d_sp": 2}, {"d_sd": 1, "d_sp": 2}], "primary": {"pa": 1}})");
    CHECK(e.field() == "primary.pa");

    e = load_failure("{\n \"users\": [\n");
    CHECK(e.line() >= 2);

    e = load_failure(R"({"beta": 3})");
    CHECK(e.field() == "users");
}

TEST_CASE("presets") {
    CHECK(preset_names() == std::vector<std::string>{"fig1", "fig2", "fig3", "fig4"});
    const auto f = load_scenario("fig2");
    CHECK(f.label == "fig2");
    REQUIRE(f.sc.users.size() == 3);
    CHECK(f.sc.users[0].d_sd == 2.002);
    CHECK(f.sc.users[0].d_sp == 2.001);
    CHECK(f.sc.users[1].d_sd == 1.004);
    CHECK(f.sc.users[1].d_sp == 2.003);
    CHECK(f.sc.users[2].d_sd == 2.006);
    CHECK(f.sc.users[2].d_sp == 2.005);
    CHECK(f.sc.beta == 3.0);

    const auto f4 = load_scenario("fig4");
    CHECK(f4.sc.users[1].d_sd == 1.004);
    CHECK(f4.sc.users[1].d_sp == 1.003);
    CHECK_FALSE(preset_distances("fig5").has_value());
}

TEST_CASE("load_scenario reads files") {
    const std::string path = "test_scenario_io_tmp.json";
    {
        std::ofstream out(path);
        out << R"({"users": [{"d_sd": 1, "d_sp": 1}, {"d_sd": 2, "d_sp": 2}], "trials": 10})";
    }
    const auto f = load_scenario(path);
    CHECK(f.label == "test_scenario_io_tmp");
    CHECK(f.sc.trials == 10);
    std::remove(path.c_str());

    CHECK_THROWS_AS(load_scenario("does/not/exist.json"), load_error);
}
