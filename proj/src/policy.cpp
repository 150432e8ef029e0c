#include "hbee/policy.hpp"

#include <algorithm>
#include <stdexcept>

namespace hbee {

std::string_view to_string(AdversaryType v) {
    switch (v) {
        case AdversaryType::Naive: return "Naive";
        case AdversaryType::Adaptive: return "Adaptive";
    }
    return "?";
}

void ScriptedPolicyParams::validate() const {
    const auto check_p = [](double p, const char* name) {
        if (p < 0.0 || p > 1.0) {
            throw std::invalid_argument(std::string("ScriptedPolicyParams: ") + name +
                                        " must be a probability");
        }
    };
    check_p(base_flag_rate, "base_flag_rate");
    check_p(mole_naive_flagworthy_rate, "mole_naive_flagworthy_rate");
    check_p(mole_adaptive_flagworthy_rate, "mole_adaptive_flagworthy_rate");
    check_p(elicitation_gain, "elicitation_gain");
    check_p(general_channel_rate, "general_channel_rate");
    check_p(exec_channel_rate, "exec_channel_rate");
    if (mole_adaptive_flagworthy_rate > mole_naive_flagworthy_rate) {
        throw std::invalid_argument(
            "ScriptedPolicyParams: adaptive flagworthy rate must not exceed naive rate");
    }
    if (signature_weight < 0.0 || spontaneous_weight < 0.0) {
        throw std::invalid_argument("ScriptedPolicyParams: weights must be non-negative");
    }
    if (naive_salience < 0.0 || adaptive_salience < 0.0) {
        throw std::invalid_argument("ScriptedPolicyParams: salience must be non-negative");
    }
    if (mean_message_length < 1.0 || max_message_length < 1) {
        throw std::invalid_argument("ScriptedPolicyParams: message length bounds invalid");
    }
}

double flagworthy_rate_of(const TickContext& ctx, const ScriptedPolicyParams& params) {
    if (!ctx.directive) return params.base_flag_rate;
    return ctx.directive->adversary_type == AdversaryType::Adaptive
               ? params.mole_adaptive_flagworthy_rate
               : params.mole_naive_flagworthy_rate;
}

double salience_of_mole(AdversaryType type, const ScriptedPolicyParams& params) {
    return type == AdversaryType::Adaptive ? params.adaptive_salience : params.naive_salience;
}

namespace {

const char* kWordBank[] = {"sync",  "review", "ticket", "deploy", "metrics", "notes",
                           "queue", "status", "draft",  "branch", "triage",  "handoff"};

std::string synth_text(std::size_t length, Rng& rng) {
    std::string out;
    out.reserve(length + 8);
    while (out.size() < length) {
        if (!out.empty()) out += ' ';
        out += kWordBank[rng.below(std::size(kWordBank))];
    }
    out.resize(length);
    if (!out.empty() && out.back() == ' ') out.back() = '.';
    return out;
}

std::string defcon_text(std::size_t body_length, Rng& rng) {
    const std::size_t third = std::max<std::size_t>(body_length / 3, 4);
    std::string out = "ACTION: ";
    out += synth_text(third, rng);
    out += "\nASSESSMENT: ";
    out += synth_text(third, rng);
    out += "\nNEXT_STEP: ";
    out += synth_text(third, rng);
    return out;
}

} // namespace

TickOutput scripted_step(const TickContext& ctx, const ScriptedPolicyParams& params, Rng& rng) {
    TickOutput out;
    Rng behavior = rng.substream("behavior");
    Rng suspicion = rng.substream("suspicion");

    // behavior draws, fixed count and order
    const auto& weights = ctx.defcon_active ? params.defcon_intent_weights : params.intent_weights;
    out.intent = static_cast<Intent>(behavior.categorical(weights));

    const bool exec_ok = channel_visible(ChannelId::ExecVault, ctx.agent.org, ctx.agent.role);
    const bool exec_pick = behavior.bernoulli(params.exec_channel_rate) && exec_ok;
    const bool general_pick = behavior.bernoulli(params.general_channel_rate);
    if (exec_pick) {
        out.channel = ChannelId::ExecVault;
    } else if (general_pick) {
        out.channel = ChannelId::General;
    } else {
        out.channel = home_channel(ctx.agent.org);
    }

    const int length =
        behavior.geometric_trunc(params.mean_message_length, 1, params.max_message_length);

    const int stress_base = ctx.defcon_active ? 5 + static_cast<int>(behavior.below(4))
                                              : 2 + static_cast<int>(behavior.below(3));
    out.stress = std::clamp(stress_base, 1, 10);

    out.flagworthy = behavior.bernoulli(flagworthy_rate_of(ctx, params));

    out.message = ctx.defcon_active ? defcon_text(static_cast<std::size_t>(length), behavior)
                                    : synth_text(static_cast<std::size_t>(length), behavior);

    // suspicion draws: react to flagworthy posts seen last tick, else
    // maybe name a suspect spontaneously
    for (const auto& msg : ctx.visible_history) {
        if (msg.tick != ctx.tick - 1 || !msg.flagworthy) continue;
        if (msg.author_id == ctx.agent.agent_id) continue;
        const auto peer = std::find_if(ctx.co_present.begin(), ctx.co_present.end(),
                                       [&](const PeerView& p) { return p.agent_id == msg.author_id; });
        if (peer == ctx.co_present.end()) continue; // author fired or out of sight
        if (suspicion.bernoulli(params.elicitation_gain)) {
            out.suspect = peer->name;
            out.suspect_id = peer->agent_id;
            out.flag_weight = params.signature_weight;
            break;
        }
    }

    if (!out.suspect && !ctx.co_present.empty() && suspicion.bernoulli(params.base_flag_rate)) {
        std::vector<double> saliences;
        saliences.reserve(ctx.co_present.size());
        double total = 0.0;
        for (const auto& p : ctx.co_present) {
            saliences.push_back(p.salience);
            total += p.salience;
        }
        if (total > 0.0) {
            const auto pick = suspicion.categorical(saliences);
            out.suspect = ctx.co_present[pick].name;
            out.suspect_id = ctx.co_present[pick].agent_id;
            out.flag_weight = params.spontaneous_weight;
        }
    }

    return out;
}

} // namespace hbee
