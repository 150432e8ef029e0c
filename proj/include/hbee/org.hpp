#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hbee {

enum class Org { RND, ENG, GOV, OPS };
enum class Role { Lead, Officer, Engineer, Analyst, Researcher, Junior, Intern };
enum class Archetype { Snarky, Anxious, Friendly, SysAdmin, Worker };
enum class ChannelId { General, DevDen, GovRoom, OpsRoom, ExecVault };
enum class Intent { DEEP_WORK, SOCIALIZE, COLLABORATE, TRIAGE, ANALYZE, MITIGATE, ESCALATE };

inline constexpr int kChannelCount = 5;
inline constexpr int kIntentCount = 7;

std::string_view to_string(Org v);
std::string_view to_string(Role v);
std::string_view to_string(Archetype v);
std::string_view to_string(ChannelId v);
std::string_view to_string(Intent v);

Org org_from_string(std::string_view s);
Role role_from_string(std::string_view s);
Archetype archetype_from_string(std::string_view s);
ChannelId channel_from_string(std::string_view s);
Intent intent_from_string(std::string_view s);

// Fixed identity; immutable for the lifetime of a run.
struct AgentIdentity {
    int agent_id = 0;
    std::string name;
    Org org = Org::RND;
    Role role = Role::Engineer;
    Archetype archetype = Archetype::Worker;
};

// Channel visibility is a pure function of (org, role):
//   General   - everyone
//   DevDen    - ENG and RND
//   GovRoom   - GOV only
//   OpsRoom   - OPS only
//   ExecVault - Lead and Officer roles, any org
bool channel_visible(ChannelId channel, Org org, Role role);
std::vector<ChannelId> visible_channels(const AgentIdentity& agent);

// The org-private channel a member posts to by default.
ChannelId home_channel(Org org);

struct Roster {
    std::vector<AgentIdentity> agents; // indexed by agent_id

    int size() const { return static_cast<int>(agents.size()); }
    const AgentIdentity& by_id(int id) const;
    const AgentIdentity* find_by_name(std::string_view name) const;
    void validate() const; // unique ids 0..n-1, unique names
};

// CSV with header: agent_id,name,org,role,archetype
Roster load_roster_csv(const std::string& path);
void save_roster_csv(const Roster& roster, const std::string& path);

// Analysis windows partitioning [1, horizon].
struct WindowSpec {
    int baseline_lo = 1;
    int baseline_hi = 29;
    int pre_announce_lo = 30;
    int pre_announce_hi = 60;
    int crisis_lo = 61;
    int crisis_hi = 100;
    int defcon_onset = 50;
    int snapshot_tick = 60;
    int horizon = 100;

    void validate() const;
    // Exactly one of baseline / pre-announce / crisis.
    std::string_view window_of(int tick) const;
};

} // namespace hbee
