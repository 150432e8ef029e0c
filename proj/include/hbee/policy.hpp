#pragma once

#include "hbee/org.hpp"
#include "hbee/rng.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace hbee {

enum class AdversaryType { Naive, Adaptive };

std::string_view to_string(AdversaryType v);

// Covert objective injected into the mole's context from the pre-announce
// window onward. opsec_text is present exactly for the adaptive type.
struct MoleDirective {
    AdversaryType adversary_type = AdversaryType::Naive;
    std::string goal_text;
    std::optional<std::string> opsec_text;
};

// A message as seen by other agents: channel post plus whether the
// behavior it carried reads as suspicion-eliciting.
struct VisibleMessage {
    int tick = 0;
    int author_id = 0;
    ChannelId channel = ChannelId::General;
    bool flagworthy = false;
    int length = 0;
};

// A peer the agent can currently observe (shares at least one visible
// channel and is live). Salience models how much social surface the peer
// presents when suspicion goes looking for a target.
struct PeerView {
    int agent_id = 0;
    std::string name;
    double salience = 1.0;
};

struct TickContext {
    int tick = 0;
    AgentIdentity agent;
    double mood = 0.5;
    double trust = 0.7;
    std::vector<VisibleMessage> visible_history; // bounded; only channels visible to the agent
    std::vector<PeerView> co_present;            // live peers, self excluded, ascending agent_id
    double task_progress = 0.0;
    std::optional<MoleDirective> directive;      // mole only, tick >= pre-announce start
    bool defcon_active = false;
};

struct TickOutput {
    std::string message;
    ChannelId channel = ChannelId::General;
    int stress = 1;
    Intent intent = Intent::SOCIALIZE;
    std::optional<std::string> suspect; // live roster agent, never self
    bool parse_fallback = false;

    // mechanics consumed by the engine, not serialized to telemetry
    int suspect_id = -1;
    double flag_weight = 0.0;
    bool flagworthy = false;
};

// Scripted policy calibration. The committed full-scale defaults live
// here; desk-scale configurations override via config files. Rates are
// per agent per tick.
struct ScriptedPolicyParams {
    // Baseline suspicion activity of an ordinary agent: the rate at which
    // it does something flag-eliciting, and equally the rate at which it
    // spontaneously names a suspect. Zero silences both.
    double base_flag_rate = 0.04;
    double mole_naive_flagworthy_rate = 0.08;
    double mole_adaptive_flagworthy_rate = 0.01;
    // Probability an observer flags a flagworthy behavior it saw.
    double elicitation_gain = 0.5;
    // Suspicion weight per elicited flag. Identical across adversary
    // types: adaptation changes how often flagworthy events happen, never
    // what one is worth.
    double signature_weight = 1.0;
    double spontaneous_weight = 1.0;
    // Social surface multipliers once the directive is active. A mole
    // working a covert goal pulls back from the social field; the OPSEC
    // directive pulls back much harder.
    double naive_salience = 0.35;
    double adaptive_salience = 0.05;

    std::array<double, kIntentCount> intent_weights = {0.30, 0.20, 0.20, 0.10, 0.10, 0.05, 0.05};
    std::array<double, kIntentCount> defcon_intent_weights = {0.10, 0.05, 0.05, 0.25, 0.25, 0.20, 0.10};

    double mean_message_length = 80.0;
    int max_message_length = 2000;

    double general_channel_rate = 0.30; // else the org home channel
    double exec_channel_rate = 0.10;    // Lead/Officer only, drawn first

    void validate() const;
};

// Deterministic function of (ctx, params, rng). rng must be the run's
// per-agent-per-tick substream. Stream discipline: behavior draws
// (intent, channel, length, stress, flagworthy) come from the "behavior"
// substream and never depend on other agents, so paired conditions share
// innocent behavior byte for byte; suspicion draws (reaction to visible
// flagworthy posts, spontaneous naming) come from the "suspicion"
// substream.
TickOutput scripted_step(const TickContext& ctx, const ScriptedPolicyParams& params, Rng& rng);

// Flagworthy emission rate the agent is on, given its directive status.
double flagworthy_rate_of(const TickContext& ctx, const ScriptedPolicyParams& params);

// Salience a directive-active mole presents; 1.0 for everyone else.
double salience_of_mole(AdversaryType type, const ScriptedPolicyParams& params);

} // namespace hbee
