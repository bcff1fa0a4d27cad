#include <map>

#include "crsched/scenario_io.hpp"

namespace crsched {

namespace {

// Every user sits roughly two units from both the destination and PU-RX. The
// small offsets keep the alphas pairwise distinct so the closed forms apply.
// A caption-level distance of "about 1" gets the same offsets (1.004 / 1.003).
using distances = std::vector<std::pair<double, double>>;

const std::map<std::string, distances, std::less<>>& presets() {
    static const std::map<std::string, distances, std::less<>> table = {
        // All users equidistant from destination and PU-RX.
        {"fig1", {{2.002, 2.001}, {2.004, 2.003}, {2.006, 2.005}}},
        // User 2 close to the destination.
        {"fig2", {{2.002, 2.001}, {1.004, 2.003}, {2.006, 2.005}}},
        // User 2 close to PU-RX.
        {"fig3", {{2.002, 2.001}, {2.004, 1.003}, {2.006, 2.005}}},
        // User 2 close to both, same ratio as the others.
        {"fig4", {{2.002, 2.001}, {1.004, 1.003}, {2.006, 2.005}}},
    };
    return table;
}

}  // namespace

std::vector<std::string> preset_names() {
    std::vector<std::string> names;
    for (const auto& [name, _] : presets()) {
        names.push_back(name);
    }
    return names;
}

std::optional<std::vector<std::pair<double, double>>> preset_distances(std::string_view name) {
    const auto& table = presets();
    if (auto it = table.find(name); it != table.end()) {
        return it->second;
    }
    return std::nullopt;
}

}  // namespace crsched
