#include "crsched/scenario_io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "crsched/error.hpp"

namespace crsched {

namespace {

using nlohmann::json;

std::size_t line_at(std::string_view text, std::size_t offset) {
    offset = std::min(offset, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + offset, '\n'));
}

// Line of the `occurrence`-th (0-based) quoted appearance of `key`, 0 if absent.
std::size_t line_of_key(std::string_view text, std::string_view key, std::size_t occurrence = 0) {
    const std::string quoted = "\"" + std::string(key) + "\"";
    std::size_t pos = 0;
    for (std::size_t i = 0;; ++i) {
        pos = text.find(quoted, pos);
        if (pos == std::string_view::npos) {
            return 0;
        }
        if (i == occurrence) {
            return line_at(text, pos);
        }
        pos += quoted.size();
    }
}

class reader {
public:
    explicit reader(std::string_view text) : text_(text) {}

    [[noreturn]] void fail(const std::string& field, std::string_view key, std::size_t occurrence,
                           const std::string& message) const {
        throw load_error(field, line_of_key(text_, key, occurrence), message);
    }

    void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                        const std::string& prefix) const {
        for (const auto& [key, _] : obj.items()) {
            if (!allowed.contains(key)) {
                fail(prefix + key, key, 0, "unknown key '" + prefix + key + "'");
            }
        }
    }

    double number(const json& obj, const std::string& key, const std::string& field,
                  std::size_t occurrence = 0) const {
        const auto& v = obj.at(key);
        if (!v.is_number()) {
            fail(field, key, occurrence, field + " must be a number");
        }
        return v.get<double>();
    }

    std::uint64_t unsigned_integer(const json& obj, const std::string& key) const {
        const auto& v = obj.at(key);
        if (!v.is_number_unsigned()) {
            fail(key, key, 0, key + " must be a nonnegative integer");
        }
        return v.get<std::uint64_t>();
    }

    std::string string(const json& obj, const std::string& key) const {
        const auto& v = obj.at(key);
        if (!v.is_string()) {
            fail(key, key, 0, key + " must be a string");
        }
        return v.get<std::string>();
    }

private:
    std::string_view text_;
};

}  // namespace

load_error::load_error(std::string field, std::size_t line, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
      field_(std::move(field)),
      line_(line) {}

method_set method_set::parse(std::string_view name) {
    if (name == "closed-form") {
        return {true, false, false};
    }
    if (name == "quadrature") {
        return {false, true, false};
    }
    if (name == "monte-carlo") {
        return {false, false, true};
    }
    if (name == "all") {
        return all();
    }
    throw std::invalid_argument("unknown method '" + std::string(name) +
                                "' (expected closed-form, quadrature, monte-carlo or all)");
}

output_format parse_output_format(std::string_view name) {
    if (name == "json") {
        return output_format::json;
    }
    if (name == "csv") {
        return output_format::csv;
    }
    throw std::invalid_argument("unknown format '" + std::string(name) + "' (expected json or csv)");
}

power_mode parse_power_mode(std::string_view name) {
    if (name == "approx") {
        return power_mode::approx;
    }
    if (name == "exact") {
        return power_mode::exact;
    }
    throw std::invalid_argument("unknown power mode '" + std::string(name) + "' (expected exact or approx)");
}

std::string_view to_string(power_mode mode) {
    return mode == power_mode::exact ? "exact" : "approx";
}

scenario_file parse_scenario(std::string_view text, std::string label) {
    json doc;
    try {
        doc = json::parse(text, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        throw load_error("", line_at(text, e.byte > 0 ? e.byte - 1 : 0),
                         std::string("malformed scenario document: ") + e.what());
    }
    const reader in(text);
    if (!doc.is_object()) {
        throw load_error("", 1, "scenario document must be a JSON object");
    }
    in.reject_unknown(doc, {"users", "beta", "trials", "seed", "method", "power_mode", "primary", "format"}, "");

    scenario_file out;
    out.label = std::move(label);
    scenario& sc = out.sc;

    if (doc.contains("beta")) {
        sc.beta = in.number(doc, "beta", "beta");
        if (!(sc.beta > 0.0)) {
            in.fail("beta", "beta", 0, "beta must be positive");
        }
    }
    if (doc.contains("trials")) {
        sc.trials = in.unsigned_integer(doc, "trials");
        if (sc.trials == 0) {
            in.fail("trials", "trials", 0, "trials must be at least 1");
        }
    }
    if (doc.contains("seed")) {
        sc.seed = in.unsigned_integer(doc, "seed");
    }
    try {
        if (doc.contains("method")) {
            out.methods = method_set::parse(in.string(doc, "method"));
        }
    } catch (const std::invalid_argument& e) {
        in.fail("method", "method", 0, e.what());
    }
    try {
        if (doc.contains("power_mode")) {
            sc.power = parse_power_mode(in.string(doc, "power_mode"));
        }
    } catch (const std::invalid_argument& e) {
        in.fail("power_mode", "power_mode", 0, e.what());
    }
    try {
        if (doc.contains("format")) {
            out.format = parse_output_format(in.string(doc, "format"));
        }
    } catch (const std::invalid_argument& e) {
        in.fail("format", "format", 0, e.what());
    }

    if (doc.contains("primary")) {
        const auto& p = doc.at("primary");
        if (!p.is_object()) {
            in.fail("primary", "primary", 0, "primary must be an object");
        }
        in.reject_unknown(p, {"p_u", "p_a", "p_m", "eta0", "delta_pd_sq"}, "primary.");
        const std::pair<const char*, double primary_side::*> fields[] = {
            {"p_u", &primary_side::p_u},   {"p_a", &primary_side::p_a},
            {"p_m", &primary_side::p_m},   {"eta0", &primary_side::eta0},
            {"delta_pd_sq", &primary_side::delta_pd_sq}};
        for (const auto& [key, member] : fields) {
            if (p.contains(key)) {
                sc.primary.*member = in.number(p, key, std::string("primary.") + key);
            }
        }
        try {
            sc.primary.validate();
        } catch (const domain_error& e) {
            in.fail("primary", "primary", 0, e.what());
        }
    }

    if (!doc.contains("users")) {
        throw load_error("users", 0, "missing required key 'users'");
    }
    const auto& users = doc.at("users");
    if (!users.is_array()) {
        in.fail("users", "users", 0, "users must be an array");
    }
    if (users.size() < 2) {
        in.fail("users", "users", 0, "users must list at least two entries");
    }
    for (std::size_t i = 0; i < users.size(); ++i) {
        const auto& u = users[i];
        const std::string prefix = "users[" + std::to_string(i) + "].";
        if (!u.is_object()) {
            in.fail("users[" + std::to_string(i) + "]", "users", 0, "each user must be an object");
        }
        in.reject_unknown(u, {"d_sd", "d_sp"}, prefix);
        double d[2] = {0.0, 0.0};
        const char* keys[2] = {"d_sd", "d_sp"};
        for (int j = 0; j < 2; ++j) {
            if (!u.contains(keys[j])) {
                in.fail(prefix + keys[j], "users", 0, "missing " + prefix + keys[j]);
            }
            d[j] = in.number(u, keys[j], prefix + keys[j], i);
            if (!(d[j] > 0.0)) {
                in.fail(prefix + keys[j], keys[j], i, prefix + keys[j] + " must be positive");
            }
        }
        sc.users.push_back(user_link::make(d[0], d[1], sc.beta));
    }
    sc.validate();
    return out;
}

scenario_file load_scenario(const std::string& path_or_preset) {
    if (auto distances = preset_distances(path_or_preset)) {
        scenario_file out;
        out.label = path_or_preset;
        out.sc = scenario::from_distances(*distances);
        return out;
    }
    std::ifstream in(path_or_preset);
    if (!in) {
        throw load_error("", 0, "cannot open scenario '" + path_or_preset +
                                    "' (not a readable file or a preset name)");
    }
    std::ostringstream text;
    text << in.rdbuf();
    std::string label = path_or_preset;
    if (auto slash = label.find_last_of('/'); slash != std::string::npos) {
        label = label.substr(slash + 1);
    }
    if (auto dot = label.find_last_of('.'); dot != std::string::npos && dot > 0) {
        label = label.substr(0, dot);
    }
    return parse_scenario(text.str(), std::move(label));
}

}  // namespace crsched
