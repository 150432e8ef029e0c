#include "hbee/scenario.hpp"

#include "hbee/digest.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hbee {

std::string_view to_string(ScenarioEventKind v) {
    switch (v) {
        case ScenarioEventKind::Fire: return "fire";
        case ScenarioEventKind::News: return "news";
        case ScenarioEventKind::DefconOn: return "defcon_on";
    }
    return "?";
}

ScenarioEventKind scenario_event_kind_from_string(std::string_view s) {
    if (s == "fire" || s == "Fire") return ScenarioEventKind::Fire;
    if (s == "news" || s == "News") return ScenarioEventKind::News;
    if (s == "defcon_on" || s == "DefconOn") return ScenarioEventKind::DefconOn;
    throw std::invalid_argument("scenario event kind: unknown value '" + std::string(s) + "'");
}

std::vector<std::string> Scenario::fire_targets_before(int tick) const {
    std::vector<std::string> out;
    for (const auto& e : events) {
        if (e.kind == ScenarioEventKind::Fire && e.tick < tick && e.target) {
            out.push_back(*e.target);
        }
    }
    return out;
}

Scenario load_scenario(const std::string& path, int horizon) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("load_scenario: cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string raw = buf.str();

    YAML::Node root;
    try {
        root = YAML::Load(raw);
    } catch (const YAML::Exception& e) {
        throw std::runtime_error("load_scenario: parse failure in '" + path + "': " + e.what());
    }

    Scenario s;
    s.content_hash = sha256_hex(raw);
    if (!root["scenario_id"]) throw std::runtime_error("load_scenario: missing scenario_id");
    s.scenario_id = root["scenario_id"].as<std::string>();

    if (root["events"]) {
        for (const auto& node : root["events"]) {
            ScenarioEvent e;
            if (!node["tick"] || !node["kind"]) {
                throw std::runtime_error("load_scenario: event needs tick and kind");
            }
            e.tick = node["tick"].as<int>();
            e.kind = scenario_event_kind_from_string(node["kind"].as<std::string>());
            if (node["target"]) e.target = node["target"].as<std::string>();

            if (e.tick < 1 || e.tick > horizon) {
                throw std::runtime_error("load_scenario: event tick " + std::to_string(e.tick) +
                                         " outside [1," + std::to_string(horizon) + "]");
            }
            if (e.kind == ScenarioEventKind::Fire && !e.target) {
                throw std::runtime_error("load_scenario: fire event at tick " +
                                         std::to_string(e.tick) + " has no target");
            }
            if (e.kind != ScenarioEventKind::Fire && e.target) {
                throw std::runtime_error("load_scenario: non-fire event at tick " +
                                         std::to_string(e.tick) + " must not carry a target");
            }
            s.events.push_back(std::move(e));
        }
    }

    std::stable_sort(s.events.begin(), s.events.end(),
                     [](const ScenarioEvent& a, const ScenarioEvent& b) { return a.tick < b.tick; });
    return s;
}

PreflightReport preflight_validate(const Scenario& scenario, const AgentIdentity& mole,
                                   const WindowSpec& windows) {
    PreflightReport report;
    for (const auto& e : scenario.events) {
        if (e.kind != ScenarioEventKind::Fire) continue;
        if (e.tick >= windows.pre_announce_lo) continue;
        if (e.target && *e.target == mole.name) {
            report.pass = false;
            report.violations.push_back("fire event at tick " + std::to_string(e.tick) +
                                        " targets the mole '" + mole.name +
                                        "' before the pre-announce window");
        }
    }
    return report;
}

} // namespace hbee
