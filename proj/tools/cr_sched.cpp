// cr-sched: selection probabilities of opportunistic scheduling in an
// underlay cognitive-radio network.
//
//   cr-sched run <path|preset> [--method ...] [--trials N] [--seed S]
//                [--format json|csv] [--out FILE] [--check] [--power exact|approx]
//   cr-sched plot <path|preset>... --out FILE

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "crsched/error.hpp"
#include "crsched/report.hpp"
#include "crsched/scenario_io.hpp"

namespace {

constexpr int exit_error = 1;
constexpr int exit_check_failed = 3;

struct overrides {
    std::optional<std::string> method;
    std::optional<std::uint64_t> trials;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> power;
    bool record_snr = false;
};

void apply(const overrides& o, crsched::scenario_file& input) {
    if (o.method) {
        input.methods = crsched::method_set::parse(*o.method);
    }
    if (o.trials) {
        if (*o.trials == 0) {
            throw crsched::domain_error("--trials must be at least 1");
        }
        input.sc.trials = *o.trials;
    }
    if (o.seed) {
        input.sc.seed = *o.seed;
    }
    if (o.power) {
        input.sc.power = crsched::parse_power_mode(*o.power);
    }
    input.sc.record_snr = input.sc.record_snr || o.record_snr;
}

void write_output(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write '" + path + "'");
    }
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Selection probabilities of opportunistic scheduling in underlay cognitive radio"};
    app.require_subcommand(1);

    overrides common;
    unsigned workers = 1;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--trials", common.trials, "Monte Carlo trial count");
        cmd->add_option("--seed", common.seed, "Master seed");
        cmd->add_option("--power", common.power, "Power control mode")
            ->check(CLI::IsMember({"exact", "approx"}));
        cmd->add_option("--workers", workers, "Monte Carlo worker threads (0 = all cores)");
        cmd->add_flag("--record-snr", common.record_snr, "Record mean SNR of the selected user");
    };

    std::string target;
    std::optional<std::string> format;
    std::string out_path;
    bool check = false;
    auto* run = app.add_subcommand("run", "Compute selection probabilities for one scenario");
    run->add_option("scenario", target, "Scenario file or preset (" +
                                            CLI::detail::join(crsched::preset_names(), ", ") + ")")
        ->required();
    run->add_option("--method", common.method, "Methods to run")
        ->check(CLI::IsMember({"closed-form", "quadrature", "monte-carlo", "all"}));
    run->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}));
    run->add_option("--out", out_path, "Output file (default stdout)");
    run->add_flag("--check", check, "Fail unless Monte Carlo agrees with the analysis at 3 sigma");
    add_common(run);

    std::vector<std::string> plot_targets;
    std::string plot_out;
    auto* plot = app.add_subcommand("plot", "Export grouped-bar data (analytic vs Monte Carlo)");
    plot->add_option("scenarios", plot_targets, "Scenario files or presets")->required();
    plot->add_option("--out", plot_out, "Output CSV (default stdout)");
    add_common(plot);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            auto input = crsched::load_scenario(target);
            apply(common, input);
            if (format) {
                input.format = crsched::parse_output_format(*format);
            }
            const auto report = crsched::build_report(input, {workers, check});
            write_output(input.format == crsched::output_format::csv ? crsched::to_csv(report)
                                                                     : crsched::to_json(report),
                         out_path);
            if (report.check && !report.check->pass) {
                std::cerr << "check failed: max |analytic - mc| = " << report.check->max_abs_diff
                          << " (" << report.check->max_sigma_ratio << " sigma)\n";
                return exit_check_failed;
            }
            return 0;
        }

        std::vector<crsched::run_report> reports;
        for (const auto& t : plot_targets) {
            auto input = crsched::load_scenario(t);
            apply(common, input);
            input.methods = crsched::method_set::all();
            reports.push_back(crsched::build_report(input, {workers, false}));
        }
        if (plot_out.empty() || plot_out == "-") {
            const auto points = crsched::plot_data(reports);
            crsched::write_plot_csv(points, std::cout);
        } else {
            crsched::emit_plot_data(reports, plot_out);
        }
        return 0;
    } catch (const crsched::load_error& e) {
        std::cerr << "error loading scenario";
        if (!e.field().empty()) {
            std::cerr << " (field " << e.field() << ")";
        }
        std::cerr << ": " << e.what() << '\n';
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
    }
    return exit_error;
}
