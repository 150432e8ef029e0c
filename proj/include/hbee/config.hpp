#pragma once

#include "hbee/engine.hpp"
#include "hbee/llm.hpp"
#include "hbee/verdict.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hbee {

// Tool-level configuration, loaded from a YAML key-value tree. Every
// threshold defaults to its pre-registered value; whatever the file
// overrides is recorded in the output provenance. Scalar keys may also be
// overridden by HBEE_* environment variables (see env_key).
struct CliConfig {
    std::string roster_path = "fixtures/roster_vixero100.csv";
    std::map<std::string, std::string> scenario_paths; // per condition short name
    std::string default_scenario_path = "fixtures/scenario_default.yaml";
    std::vector<std::uint64_t> seeds;                  // default 0..19
    PolicyKind policy_kind = PolicyKind::Scripted;
    std::string output_dir = "out";
    std::optional<std::string> enron_path;
    std::optional<std::string> replication_manifest;
    int parallelism = 0; // 0 = hardware concurrency
    int history_ticks = 5;
    double validity_ratio = 0.95;

    LlmEndpointConfig llm;
    ScriptedPolicyParams scripted;
    CascadeParams cascade;
    Thresholds thresholds;
    BootstrapSettings bootstrap;
    WindowSpec windows;

    std::string config_path;   // where this config was loaded from ("" = defaults)
    std::string config_sha256; // hash of the raw config bytes

    std::string scenario_path_for(Condition c) const;
    RunConfig make_run_config(Condition c, std::uint64_t seed, const Roster& roster,
                              const std::map<std::string, Scenario>& scenarios) const;
};

// Environment variable carrying an override for a config key, e.g.
// "output_dir" -> HBEE_OUTPUT_DIR.
std::string env_key(std::string_view config_key);

CliConfig load_config(const std::string& path);
CliConfig default_config();

// Scenario cache keyed by path.
std::map<std::string, Scenario> load_scenarios(const CliConfig& cfg);

nlohmann::json thresholds_json(const CliConfig& cfg);

} // namespace hbee
