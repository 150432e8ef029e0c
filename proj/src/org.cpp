#include "hbee/org.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace hbee {

namespace {

[[noreturn]] void bad_enum(std::string_view kind, std::string_view value) {
    throw std::invalid_argument(std::string(kind) + ": unknown value '" + std::string(value) + "'");
}

} // namespace

std::string_view to_string(Org v) {
    switch (v) {
        case Org::RND: return "RND";
        case Org::ENG: return "ENG";
        case Org::GOV: return "GOV";
        case Org::OPS: return "OPS";
    }
    return "?";
}

std::string_view to_string(Role v) {
    switch (v) {
        case Role::Lead: return "Lead";
        case Role::Officer: return "Officer";
        case Role::Engineer: return "Engineer";
        case Role::Analyst: return "Analyst";
        case Role::Researcher: return "Researcher";
        case Role::Junior: return "Junior";
        case Role::Intern: return "Intern";
    }
    return "?";
}

std::string_view to_string(Archetype v) {
    switch (v) {
        case Archetype::Snarky: return "Snarky";
        case Archetype::Anxious: return "Anxious";
        case Archetype::Friendly: return "Friendly";
        case Archetype::SysAdmin: return "SysAdmin";
        case Archetype::Worker: return "Worker";
    }
    return "?";
}

std::string_view to_string(ChannelId v) {
    switch (v) {
        case ChannelId::General: return "General";
        case ChannelId::DevDen: return "DevDen";
        case ChannelId::GovRoom: return "GovRoom";
        case ChannelId::OpsRoom: return "OpsRoom";
        case ChannelId::ExecVault: return "ExecVault";
    }
    return "?";
}

std::string_view to_string(Intent v) {
    switch (v) {
        case Intent::DEEP_WORK: return "DEEP_WORK";
        case Intent::SOCIALIZE: return "SOCIALIZE";
        case Intent::COLLABORATE: return "COLLABORATE";
        case Intent::TRIAGE: return "TRIAGE";
        case Intent::ANALYZE: return "ANALYZE";
        case Intent::MITIGATE: return "MITIGATE";
        case Intent::ESCALATE: return "ESCALATE";
    }
    return "?";
}

Org org_from_string(std::string_view s) {
    if (s == "RND") return Org::RND;
    if (s == "ENG") return Org::ENG;
    if (s == "GOV") return Org::GOV;
    if (s == "OPS") return Org::OPS;
    bad_enum("org", s);
}

Role role_from_string(std::string_view s) {
    if (s == "Lead") return Role::Lead;
    if (s == "Officer") return Role::Officer;
    if (s == "Engineer") return Role::Engineer;
    if (s == "Analyst") return Role::Analyst;
    if (s == "Researcher") return Role::Researcher;
    if (s == "Junior") return Role::Junior;
    if (s == "Intern") return Role::Intern;
    bad_enum("role", s);
}

Archetype archetype_from_string(std::string_view s) {
    if (s == "Snarky") return Archetype::Snarky;
    if (s == "Anxious") return Archetype::Anxious;
    if (s == "Friendly") return Archetype::Friendly;
    if (s == "SysAdmin") return Archetype::SysAdmin;
    if (s == "Worker") return Archetype::Worker;
    bad_enum("archetype", s);
}

ChannelId channel_from_string(std::string_view s) {
    if (s == "General") return ChannelId::General;
    if (s == "DevDen") return ChannelId::DevDen;
    if (s == "GovRoom") return ChannelId::GovRoom;
    if (s == "OpsRoom") return ChannelId::OpsRoom;
    if (s == "ExecVault") return ChannelId::ExecVault;
    bad_enum("channel", s);
}

Intent intent_from_string(std::string_view s) {
    if (s == "DEEP_WORK") return Intent::DEEP_WORK;
    if (s == "SOCIALIZE") return Intent::SOCIALIZE;
    if (s == "COLLABORATE") return Intent::COLLABORATE;
    if (s == "TRIAGE") return Intent::TRIAGE;
    if (s == "ANALYZE") return Intent::ANALYZE;
    if (s == "MITIGATE") return Intent::MITIGATE;
    if (s == "ESCALATE") return Intent::ESCALATE;
    bad_enum("intent", s);
}

bool channel_visible(ChannelId channel, Org org, Role role) {
    switch (channel) {
        case ChannelId::General: return true;
        case ChannelId::DevDen: return org == Org::ENG || org == Org::RND;
        case ChannelId::GovRoom: return org == Org::GOV;
        case ChannelId::OpsRoom: return org == Org::OPS;
        case ChannelId::ExecVault: return role == Role::Lead || role == Role::Officer;
    }
    return false;
}

std::vector<ChannelId> visible_channels(const AgentIdentity& agent) {
    std::vector<ChannelId> out;
    for (int c = 0; c < kChannelCount; ++c) {
        const auto ch = static_cast<ChannelId>(c);
        if (channel_visible(ch, agent.org, agent.role)) out.push_back(ch);
    }
    return out;
}

ChannelId home_channel(Org org) {
    switch (org) {
        case Org::RND:
        case Org::ENG: return ChannelId::DevDen;
        case Org::GOV: return ChannelId::GovRoom;
        case Org::OPS: return ChannelId::OpsRoom;
    }
    return ChannelId::General;
}

const AgentIdentity& Roster::by_id(int id) const {
    if (id < 0 || id >= size()) throw std::out_of_range("Roster::by_id: bad agent_id");
    return agents[static_cast<std::size_t>(id)];
}

const AgentIdentity* Roster::find_by_name(std::string_view name) const {
    for (const auto& a : agents) {
        if (a.name == name) return &a;
    }
    return nullptr;
}

void Roster::validate() const {
    std::unordered_set<std::string> names;
    for (int i = 0; i < size(); ++i) {
        const auto& a = agents[static_cast<std::size_t>(i)];
        if (a.agent_id != i) {
            throw std::invalid_argument("roster: agent_id " + std::to_string(a.agent_id) +
                                        " out of order at row " + std::to_string(i));
        }
        if (!names.insert(a.name).second) {
            throw std::invalid_argument("roster: duplicate name '" + a.name + "'");
        }
    }
    if (agents.empty()) throw std::invalid_argument("roster: empty");
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    return out;
}

} // namespace

Roster load_roster_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_roster_csv: cannot open '" + path + "'");

    Roster roster;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (header) { header = false; continue; }
        auto f = split_csv_line(line);
        if (f.size() != 5) throw std::runtime_error("load_roster_csv: bad row '" + line + "'");
        AgentIdentity a;
        a.agent_id = std::stoi(f[0]);
        a.name = f[1];
        a.org = org_from_string(f[2]);
        a.role = role_from_string(f[3]);
        a.archetype = archetype_from_string(f[4]);
        roster.agents.push_back(std::move(a));
    }
    roster.validate();
    return roster;
}

void save_roster_csv(const Roster& roster, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_roster_csv: cannot open '" + path + "'");
    out << "agent_id,name,org,role,archetype\n";
    for (const auto& a : roster.agents) {
        out << a.agent_id << ',' << a.name << ',' << to_string(a.org) << ','
            << to_string(a.role) << ',' << to_string(a.archetype) << '\n';
    }
}

void WindowSpec::validate() const {
    const bool partitioned = baseline_lo == 1 && baseline_hi + 1 == pre_announce_lo &&
                             pre_announce_hi + 1 == crisis_lo && crisis_hi == horizon;
    if (!partitioned) throw std::invalid_argument("WindowSpec: windows must partition [1, horizon]");
    if (defcon_onset < pre_announce_lo || defcon_onset > pre_announce_hi) {
        throw std::invalid_argument("WindowSpec: defcon_onset must fall in the pre-announce window");
    }
    if (snapshot_tick != pre_announce_hi) {
        throw std::invalid_argument("WindowSpec: snapshot_tick must be the last pre-announce tick");
    }
}

std::string_view WindowSpec::window_of(int tick) const {
    if (tick >= baseline_lo && tick <= baseline_hi) return "baseline";
    if (tick >= pre_announce_lo && tick <= pre_announce_hi) return "pre_announce";
    if (tick >= crisis_lo && tick <= crisis_hi) return "crisis";
    throw std::out_of_range("WindowSpec::window_of: tick outside [1, horizon]");
}

} // namespace hbee
