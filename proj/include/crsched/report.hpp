#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "crsched/scenario_io.hpp"

namespace crsched {

struct report_row {
    std::size_t user = 0;  ///< 1-based
    double d_sd = 0.0;
    double d_sp = 0.0;
    double alpha = 0.0;
    std::optional<double> p_closed;
    std::optional<double> p_quad;
    std::optional<double> p_mc;
    std::optional<double> ci95;
    std::optional<double> mean_snr_db;

    bool operator==(const report_row&) const = default;
};

struct check_result {
    std::string method;  ///< analytic side of the comparison
    bool pass = false;
    double max_abs_diff = 0.0;
    double max_sigma_ratio = 0.0;  ///< max |diff| / sigma over users

    bool operator==(const check_result&) const = default;
};

struct run_report {
    std::string label;
    std::vector<report_row> rows;
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;
    double beta = 0.0;
    std::string power_mode;
    std::optional<double> defect_closed;  ///< sum of p_closed minus one
    std::optional<double> defect_quad;    ///< raw quadrature sum minus one
    std::optional<std::uint64_t> cap_binding;
    std::optional<check_result> check;
    double wall_time_s = 0.0;

    bool operator==(const run_report&) const = default;
};

struct run_options {
    unsigned workers = 1;
    bool check = false;  ///< compare Monte Carlo with an analytic method at 3 sigma
};

/// Computes every requested method for the scenario. With `check`, Monte Carlo
/// and one analytic method (closed form when K <= 3, else quadrature) are
/// always run.
run_report build_report(const scenario_file& input, const run_options& options = {});

std::string to_json(const run_report& report);
run_report report_from_json(const std::string& text);

/// Header `user,d_sd,d_sp,alpha,p_closed,p_quad,p_mc,ci95`, one row per user,
/// 10 significant digits, empty cells for methods not run.
std::string to_csv(const run_report& report);

struct plot_point {
    std::string scenario;
    std::size_t user = 0;
    std::string series;  ///< "analytic" or "mc"
    double value = 0.0;
};

/// Grouped-bar data: scenario x user x {analytic, mc}. The analytic series
/// uses the closed form when present, else quadrature.
std::vector<plot_point> plot_data(std::span<const run_report> reports);
void emit_plot_data(std::span<const run_report> reports, const std::string& path);
void write_plot_csv(std::span<const plot_point> points, std::ostream& out);

}  // namespace crsched
