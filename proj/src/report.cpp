#include "crsched/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "crsched/error.hpp"

namespace crsched {

namespace {

using nlohmann::json;

std::string fixed10(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string cell(const std::optional<double>& v) {
    return v ? fixed10(*v) : std::string();
}

json optional_number(const std::optional<double>& v) {
    return v && std::isfinite(*v) ? json(*v) : json(nullptr);
}

std::optional<double> read_optional(const json& obj, const char* key) {
    if (!obj.contains(key) || obj.at(key).is_null()) {
        return std::nullopt;
    }
    return obj.at(key).get<double>();
}

}  // namespace

run_report build_report(const scenario_file& input, const run_options& options) {
    const auto start = std::chrono::steady_clock::now();
    const scenario& sc = input.sc;
    sc.validate();
    const std::size_t k = sc.users.size();
    const alpha_vector alphas = sc.alphas();

    method_set methods = input.methods;
    if (options.check) {
        methods.monte_carlo = true;
        if (!methods.closed_form && !methods.quadrature) {
            (k <= 3 ? methods.closed_form : methods.quadrature) = true;
        }
    }

    run_report report;
    report.label = input.label;
    report.seed = sc.seed;
    report.trials = sc.trials;
    report.beta = sc.beta;
    report.power_mode = std::string(to_string(sc.power));
    report.rows.resize(k);
    for (std::size_t u = 0; u < k; ++u) {
        auto& row = report.rows[u];
        row.user = u + 1;
        row.d_sd = sc.users[u].d_sd;
        row.d_sp = sc.users[u].d_sp;
        row.alpha = sc.users[u].alpha;
    }

    std::optional<selection_probabilities> closed;
    std::optional<selection_probabilities> quad;
    // "all" on K >= 4 skips the closed form; asking for it alone is an error.
    if (methods.closed_form && (k <= 3 || !(methods.quadrature || methods.monte_carlo))) {
        closed = selection_probabilities_of(alphas, method::closed_form);
        double sum = 0.0;
        for (std::size_t u = 0; u < k; ++u) {
            report.rows[u].p_closed = closed->probs[u];
            sum += closed->probs[u];
        }
        report.defect_closed = sum - 1.0;
    }
    if (methods.quadrature) {
        quad = selection_probabilities_of(alphas, method::quadrature);
        for (std::size_t u = 0; u < k; ++u) {
            report.rows[u].p_quad = quad->probs[u];
        }
        report.defect_quad = quad->sum_defect;
    }
    if (methods.monte_carlo) {
        const mc_report mc = run_monte_carlo(sc, options.workers);
        for (std::size_t u = 0; u < k; ++u) {
            report.rows[u].p_mc = mc.freqs[u];
            report.rows[u].ci95 = mc.ci95_halfwidth[u];
            if (mc.mean_snr_db && std::isfinite((*mc.mean_snr_db)[u])) {
                report.rows[u].mean_snr_db = (*mc.mean_snr_db)[u];
            }
        }
        if (sc.power == power_mode::exact) {
            report.cap_binding = mc.cap_binding;
        }
        if (options.check) {
            const auto& analytic = closed ? *closed : *quad;
            const auto cmp = compare(analytic, mc);
            check_result chk;
            chk.method = std::string(to_string(closed ? method::closed_form : method::quadrature));
            chk.pass = cmp.pass;
            for (const auto& c : cmp.users) {
                chk.max_abs_diff = std::max(chk.max_abs_diff, c.abs_diff);
                if (c.sigma > 0.0) {
                    chk.max_sigma_ratio = std::max(chk.max_sigma_ratio, c.abs_diff / c.sigma);
                }
            }
            report.check = chk;
        }
    }

    report.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

std::string to_json(const run_report& r) {
    json doc;
    doc["label"] = r.label;
    json rows = json::array();
    for (const auto& row : r.rows) {
        rows.push_back({{"user", row.user},
                        {"d_sd", row.d_sd},
                        {"d_sp", row.d_sp},
                        {"alpha", row.alpha},
                        {"analytic_closed", optional_number(row.p_closed)},
                        {"analytic_quadrature", optional_number(row.p_quad)},
                        {"mc_freq", optional_number(row.p_mc)},
                        {"ci95", optional_number(row.ci95)},
                        {"mean_snr_db", optional_number(row.mean_snr_db)}});
    }
    doc["rows"] = std::move(rows);
    json meta;
    meta["seed"] = r.seed;
    meta["trials"] = r.trials;
    meta["beta"] = r.beta;
    meta["power_mode"] = r.power_mode;
    meta["sum_defect_closed"] = optional_number(r.defect_closed);
    meta["sum_defect_quadrature"] = optional_number(r.defect_quad);
    meta["cap_binding"] = r.cap_binding ? json(*r.cap_binding) : json(nullptr);
    meta["wall_time_s"] = r.wall_time_s;
    if (r.check) {
        meta["check"] = {{"method", r.check->method},
                         {"pass", r.check->pass},
                         {"max_abs_diff", r.check->max_abs_diff},
                         {"max_sigma_ratio", r.check->max_sigma_ratio}};
    } else {
        meta["check"] = nullptr;
    }
    doc["metadata"] = std::move(meta);
    return doc.dump(2) + "\n";
}

run_report report_from_json(const std::string& text) {
    const json doc = json::parse(text);
    run_report r;
    r.label = doc.at("label").get<std::string>();
    for (const auto& row : doc.at("rows")) {
        report_row out;
        out.user = row.at("user").get<std::size_t>();
        out.d_sd = row.at("d_sd").get<double>();
        out.d_sp = row.at("d_sp").get<double>();
        out.alpha = row.at("alpha").get<double>();
        out.p_closed = read_optional(row, "analytic_closed");
        out.p_quad = read_optional(row, "analytic_quadrature");
        out.p_mc = read_optional(row, "mc_freq");
        out.ci95 = read_optional(row, "ci95");
        out.mean_snr_db = read_optional(row, "mean_snr_db");
        r.rows.push_back(out);
    }
    const auto& meta = doc.at("metadata");
    r.seed = meta.at("seed").get<std::uint64_t>();
    r.trials = meta.at("trials").get<std::uint64_t>();
    r.beta = meta.at("beta").get<double>();
    r.power_mode = meta.at("power_mode").get<std::string>();
    r.defect_closed = read_optional(meta, "sum_defect_closed");
    r.defect_quad = read_optional(meta, "sum_defect_quadrature");
    if (!meta.at("cap_binding").is_null()) {
        r.cap_binding = meta.at("cap_binding").get<std::uint64_t>();
    }
    r.wall_time_s = meta.at("wall_time_s").get<double>();
    if (!meta.at("check").is_null()) {
        const auto& c = meta.at("check");
        r.check = check_result{c.at("method").get<std::string>(), c.at("pass").get<bool>(),
                               c.at("max_abs_diff").get<double>(),
                               c.at("max_sigma_ratio").get<double>()};
    }
    return r;
}

std::string to_csv(const run_report& r) {
    std::ostringstream out;
    out << "user,d_sd,d_sp,alpha,p_closed,p_quad,p_mc,ci95\n";
    for (const auto& row : r.rows) {
        out << row.user << ',' << fixed10(row.d_sd) << ',' << fixed10(row.d_sp) << ','
            << fixed10(row.alpha) << ',' << cell(row.p_closed) << ',' << cell(row.p_quad) << ','
            << cell(row.p_mc) << ',' << cell(row.ci95) << '\n';
    }
    return out.str();
}

std::vector<plot_point> plot_data(std::span<const run_report> reports) {
    if (reports.empty()) {
        throw domain_error("plot data needs at least one report");
    }
    std::vector<plot_point> points;
    for (const auto& r : reports) {
        for (const auto& row : r.rows) {
            if (auto analytic = row.p_closed ? row.p_closed : row.p_quad) {
                points.push_back({r.label, row.user, "analytic", *analytic});
            }
        }
        for (const auto& row : r.rows) {
            if (row.p_mc) {
                points.push_back({r.label, row.user, "mc", *row.p_mc});
            }
        }
    }
    return points;
}

void write_plot_csv(std::span<const plot_point> points, std::ostream& out) {
    out << "scenario,user,series,value\n";
    for (const auto& p : points) {
        out << p.scenario << ',' << p.user << ',' << p.series << ',' << fixed10(p.value) << '\n';
    }
}

void emit_plot_data(std::span<const run_report> reports, const std::string& path) {
    const auto points = plot_data(reports);
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write plot data to '" + path + "'");
    }
    write_plot_csv(points, out);
}

}  // namespace crsched
