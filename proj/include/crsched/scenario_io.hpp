#pragma once

// Scenario documents (JSON) and the built-in figure presets.
//
//   {
//     "users": [{"d_sd": 2.002, "d_sp": 2.001}, ...],
//     "beta": 3,                     // optional, default 3
//     "trials": 1000000,             // optional
//     "seed": 20180415,              // optional
//     "method": "all",               // closed-form | quadrature | monte-carlo | all
//     "power_mode": "approx",        // approx | exact
//     "primary": {"p_u": 1, "p_a": 1, "p_m": 1000, "eta0": 1, "delta_pd_sq": 1},
//     "format": "json"               // json | csv
//   }
//
// Unknown keys are rejected.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "crsched/simulator.hpp"

namespace crsched {

/// Failure to turn a document into a valid scenario. `line` is 1-based, 0 if unknown.
class load_error : public std::runtime_error {
public:
    load_error(std::string field, std::size_t line, const std::string& message);
    const std::string& field() const noexcept { return field_; }
    std::size_t line() const noexcept { return line_; }

private:
    std::string field_;
    std::size_t line_;
};

struct method_set {
    bool closed_form = false;
    bool quadrature = false;
    bool monte_carlo = false;

    static method_set parse(std::string_view name);  ///< throws std::invalid_argument
    static method_set all() { return {true, true, true}; }
};

enum class output_format { json, csv };

output_format parse_output_format(std::string_view name);
power_mode parse_power_mode(std::string_view name);
std::string_view to_string(power_mode mode);

struct scenario_file {
    std::string label;
    scenario sc;
    method_set methods = method_set::all();
    output_format format = output_format::json;
};

/// Preset names understood by load_scenario.
std::vector<std::string> preset_names();

/// (d_sd, d_sp) per user for a figure preset, or nullopt for an unknown name.
std::optional<std::vector<std::pair<double, double>>> preset_distances(std::string_view name);

/// Parses scenario text. `label` names the scenario in reports.
scenario_file parse_scenario(std::string_view text, std::string label);

/// Loads a preset by name, otherwise reads and parses the file at `path_or_preset`.
scenario_file load_scenario(const std::string& path_or_preset);

}  // namespace crsched
