#pragma once

#include "hbee/org.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hbee {

enum class ScenarioEventKind { Fire, News, DefconOn };

std::string_view to_string(ScenarioEventKind v);
ScenarioEventKind scenario_event_kind_from_string(std::string_view s);

struct ScenarioEvent {
    int tick = 0;
    ScenarioEventKind kind = ScenarioEventKind::News;
    std::optional<std::string> target; // required for Fire, forbidden otherwise
};

// A frozen scenario file: an ordered event script plus the SHA256 of the
// raw file bytes it was loaded from.
struct Scenario {
    std::string scenario_id;
    std::vector<ScenarioEvent> events; // sorted by tick
    std::string content_hash;

    std::vector<std::string> fire_targets_before(int tick) const;
};

// Loads and validates a scenario YAML:
//   scenario_id: <string>
//   events:
//     - {tick: <int>, kind: Fire|News|DefconOn, target: <name>}
// Throws on parse failure, tick outside [1, horizon], or a Fire event
// without a target. Mole collisions are preflight's job, not load's.
Scenario load_scenario(const std::string& path, int horizon = 100);

struct PreflightReport {
    bool pass = true;
    std::vector<std::string> violations;
};

// PASS iff no Fire event targets the mole before the pre-announce window
// opens. Violations are report entries, never exceptions.
PreflightReport preflight_validate(const Scenario& scenario, const AgentIdentity& mole,
                                   const WindowSpec& windows);

} // namespace hbee
