#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>

#include "crsched/error.hpp"
#include "crsched/report.hpp"

using namespace crsched;

namespace {

scenario_file preset(const std::string& name, std::uint64_t trials = 100'000) {
    auto f = load_scenario(name);
    f.sc.trials = trials;
    return f;
}

std::size_t count_lines(const std::string& s) {
    std::size_t n = 0;
    for (char c : s) {
        n += c == '\n';
    }
    return n;
}

}  // namespace

TEST_CASE("build_report populates every requested column") {
    const auto r = build_report(preset("fig3"));
    REQUIRE(r.rows.size() == 3);
    double closed = 0, quad = 0, mc = 0;
    for (const auto& row : r.rows) {
        REQUIRE(row.p_closed);
        REQUIRE(row.p_quad);
        REQUIRE(row.p_mc);
        REQUIRE(row.ci95);
        closed += *row.p_closed;
        quad += *row.p_quad;
        mc += *row.p_mc;
    }
    CHECK(std::abs(closed - 1) < 1e-10);
    CHECK(std::abs(quad - 1) < 1e-10);
    CHECK(std::abs(mc - 1) < 1e-12);
    CHECK(r.rows[1].user == 2);
    CHECK(*r.rows[1].p_closed == doctest::Approx(0.087).epsilon(0.05));
    CHECK(r.defect_closed.has_value());
    CHECK(r.defect_quad.has_value());
    CHECK_FALSE(r.check.has_value());
}

TEST_CASE("method selection and K >= 4") {
    auto f = preset("fig1");
    f.methods = method_set::parse("closed-form");
    auto r = build_report(f);
    CHECK(r.rows[0].p_closed);
    CHECK_FALSE(r.rows[0].p_quad);
    CHECK_FALSE(r.rows[0].p_mc);

    auto big = parse_scenario(
        R"({"users": [{"d_sd": 1, "d_sp": 2}, {"d_sd": 2, "d_sp": 2}, {"d_sd": 3, "d_sp": 2}, {"d_sd": 2, "d_sp": 1}],
            "trials": 20000})",
        "k4");
    r = build_report(big);
    CHECK_FALSE(r.rows[0].p_closed);
    CHECK(r.rows[0].p_quad);

    big.methods = method_set::parse("closed-form");
    CHECK_THROWS_AS(build_report(big), unsupported_k_error);

    // --check on K = 4 compares against quadrature.
    big.methods = method_set::parse("monte-carlo");
    big.sc.trials = 200'000;
    r = build_report(big, {1, true});
    REQUIRE(r.check);
    CHECK(r.check->method == "quadrature");
    CHECK(r.check->pass);
}

TEST_CASE("check flag") {
    auto f = preset("fig2", 1'000'000);
    f.methods = method_set::parse("closed-form");
    const auto r = build_report(f, {1, true});
    REQUIRE(r.check);
    CHECK(r.check->method == "closed-form");
    CHECK(r.check->pass);
    CHECK(r.rows[0].p_mc);
}

TEST_CASE("JSON round trip") {
    auto f = preset("fig2", 50'000);
    f.sc.record_snr = true;
    f.sc.power = power_mode::exact;
    const auto r = build_report(f, {2, true});
    CHECK(r.cap_binding.has_value());
    const auto back = report_from_json(to_json(r));
    CHECK(back == r);
    CHECK(to_json(back) == to_json(r));

    auto g = preset("fig1");
    g.methods = method_set::parse("quadrature");
    const auto q = build_report(g);
    CHECK(report_from_json(to_json(q)) == q);
}

TEST_CASE("CSV contract") {
    const auto r = build_report(preset("fig2", 20'000));
    const auto csv = to_csv(r);
    CHECK(csv.rfind("user,d_sd,d_sp,alpha,p_closed,p_quad,p_mc,ci95\n", 0) == 0);
    CHECK(count_lines(csv) == 4);
    // Stable for a fixed seed.
    CHECK(csv == to_csv(build_report(preset("fig2", 20'000))));
    CHECK(csv.find("\n2,1.004,2.003,") != std::string::npos);

    auto f = preset("fig2");
    f.methods = method_set::parse("closed-form");
    const auto only = to_csv(build_report(f));
    CHECK(only.find(",,,\n") != std::string::npos);
}

TEST_CASE("plot data") {
    std::vector<run_report> reports;
    for (const auto& name : preset_names()) {
        reports.push_back(build_report(preset(name, 20'000)));
    }
    const auto points = plot_data(reports);
    CHECK(points.size() == 24);

    const auto fig1 = plot_data(std::span(reports.data(), 1));
    for (const auto& p : fig1) {
        if (p.series == "analytic") {
            CHECK(p.value == doctest::Approx(1.0 / 3).epsilon(1e-3));
        }
    }
    for (const auto& p : plot_data(std::span(reports.data() + 3, 1))) {
        CHECK(p.scenario == "fig4");
        if (p.series == "analytic") {
            CHECK(std::abs(p.value - 1.0 / 3) < 0.01);
        }
    }

    std::ostringstream out;
    write_plot_csv(points, out);
    CHECK(count_lines(out.str()) == 25);
    CHECK(out.str().rfind("scenario,user,series,value\n", 0) == 0);

    CHECK_THROWS(plot_data(std::span<const run_report>{}));
}
