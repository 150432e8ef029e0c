#include "hbee/engine.hpp"

#include "hbee/llm.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

namespace hbee {

std::string_view to_string(Condition c) {
    switch (c) {
        case Condition::C1_CascadeNaive: return "C1_CascadeNaive";
        case Condition::C2_BlindNaive: return "C2_BlindNaive";
        case Condition::C3_CascadeAdaptive: return "C3_CascadeAdaptive";
        case Condition::C4_BlindAdaptive: return "C4_BlindAdaptive";
        case Condition::C5_BlindNoMole: return "C5_BlindNoMole";
    }
    return "?";
}

std::string_view short_name(Condition c) {
    switch (c) {
        case Condition::C1_CascadeNaive: return "C1";
        case Condition::C2_BlindNaive: return "C2";
        case Condition::C3_CascadeAdaptive: return "C3";
        case Condition::C4_BlindAdaptive: return "C4";
        case Condition::C5_BlindNoMole: return "C5";
    }
    return "?";
}

Condition condition_from_string(std::string_view s) {
    for (const auto c : kAllConditions) {
        if (s == to_string(c) || s == short_name(c)) return c;
    }
    throw std::invalid_argument("condition: unknown value '" + std::string(s) + "'");
}

ConditionTraits traits_of(Condition c) {
    switch (c) {
        case Condition::C1_CascadeNaive: return {true, true, AdversaryType::Naive};
        case Condition::C2_BlindNaive: return {false, true, AdversaryType::Naive};
        case Condition::C3_CascadeAdaptive: return {true, true, AdversaryType::Adaptive};
        case Condition::C4_BlindAdaptive: return {false, true, AdversaryType::Adaptive};
        case Condition::C5_BlindNoMole: return {false, false, AdversaryType::Naive};
    }
    return {};
}

int assign_mole(const Roster& roster, std::uint64_t seed) {
    if (roster.agents.empty()) throw std::invalid_argument("assign_mole: empty roster");
    Rng rng = Rng::from_seed(seed, "mole");
    return static_cast<int>(rng.below(static_cast<std::uint64_t>(roster.size())));
}

bool defcon_template_conforms(const std::string& message) {
    if (message.rfind("ACTION: ", 0) != 0) return false;
    const auto assessment = message.find("\nASSESSMENT: ");
    if (assessment == std::string::npos) return false;
    const auto next_step = message.find("\nNEXT_STEP: ", assessment + 1);
    return next_step != std::string::npos;
}

std::string enforce_defcon_template(const std::string& message, bool defcon) {
    if (!defcon) return message;
    if (defcon_template_conforms(message)) return message;
    std::string action = message;
    std::replace(action.begin(), action.end(), '\n', ' ');
    return "ACTION: " + action + "\nASSESSMENT: situation under review\nNEXT_STEP: continue per plan";
}

std::string run_id_of(Condition c, std::uint64_t seed) {
    return std::string(short_name(c)) + "_seed" + std::to_string(seed);
}

namespace {

struct AgentState {
    double mood = 0.5;
    double trust = 0.7;
    double progress = 0.0;
};

double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

} // namespace

RunRecord run(const RunConfig& config) {
    config.params.validate();
    config.windows.validate();
    config.roster.validate();
    const ConditionTraits traits = traits_of(config.condition);
    const int n = config.roster.size();
    const int horizon = config.windows.horizon;

    RunRecord rec;
    rec.run_id = run_id_of(config.condition, config.seed);
    rec.condition = config.condition;
    rec.seed = config.seed;
    rec.scenario_hash = config.scenario.content_hash;
    rec.flagworthy_counts.assign(static_cast<std::size_t>(n), 0);

    std::optional<int> mole_id;
    if (traits.has_mole) {
        mole_id = assign_mole(config.roster, config.seed);
        rec.mole_id = mole_id;
        rec.mole_name = config.roster.by_id(*mole_id).name;
        const auto report =
            preflight_validate(config.scenario, config.roster.by_id(*mole_id), config.windows);
        if (!report.pass && !config.allow_collision) {
            std::string msg = "preflight failed for " + rec.run_id + ":";
            for (const auto& v : report.violations) msg += " " + v;
            throw PreflightError(msg);
        }
    }

    Rng root = Rng::from_seed(config.seed, "run");

    // per-agent static views
    std::vector<std::vector<ChannelId>> channels(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        channels[static_cast<std::size_t>(i)] = visible_channels(config.roster.by_id(i));
    }

    std::vector<AgentState> state(static_cast<std::size_t>(n));
    std::set<int> live;
    for (int i = 0; i < n; ++i) live.insert(i);
    std::map<int, int> fired_at;

    SuspicionGraph graph;
    bool defcon = false;
    std::deque<VisibleMessage> recent; // all posts from the last history_ticks ticks

    const std::set<int> snapshot_ticks = {config.windows.baseline_hi, config.windows.snapshot_tick,
                                          horizon};

    const auto mole_directive = [&](int tick) -> std::optional<MoleDirective> {
        if (!mole_id || tick < config.windows.pre_announce_lo) return std::nullopt;
        if (fired_at.count(*mole_id)) return std::nullopt;
        MoleDirective d;
        d.adversary_type = traits.adversary;
        d.goal_text = config.naive_goal_text;
        if (traits.adversary == AdversaryType::Adaptive) d.opsec_text = config.adaptive_opsec_text;
        return d;
    };

    int last_tick = 0;
    bool aborted = false;

    for (int t = 1; t <= horizon && !aborted; ++t) {
        // (a) scenario events
        for (const auto& e : config.scenario.events) {
            if (e.tick != t) continue;
            switch (e.kind) {
                case ScenarioEventKind::Fire: {
                    const auto* agent = config.roster.find_by_name(*e.target);
                    if (agent && live.erase(agent->agent_id) > 0) {
                        fired_at[agent->agent_id] = t;
                        if (mole_id && agent->agent_id == *mole_id) rec.mole_fired_tick = t;
                    }
                    break;
                }
                case ScenarioEventKind::News:
                case ScenarioEventKind::DefconOn:
                    defcon = true;
                    break;
            }
        }
        const bool fire_this_tick = std::any_of(
            config.scenario.events.begin(), config.scenario.events.end(),
            [&](const ScenarioEvent& e) { return e.tick == t && e.kind == ScenarioEventKind::Fire; });

        // co-presence with salience, shared by every observer this tick
        const auto directive_now = mole_directive(t);
        std::vector<PeerView> peers_all;
        peers_all.reserve(live.size());
        for (const int id : live) {
            PeerView p;
            p.agent_id = id;
            p.name = config.roster.by_id(id).name;
            p.salience = (mole_id && id == *mole_id && directive_now)
                             ? salience_of_mole(directive_now->adversary_type, config.params)
                             : 1.0;
            peers_all.push_back(std::move(p));
        }
        std::vector<int> live_ids(live.begin(), live.end());

        // (b) cascade phase reads the graph as of tick start
        if (traits.cascade) {
            const SuspicionGraph support = graph;
            for (const int observer : live_ids) {
                Rng crng = root.substream("cascade").substream(static_cast<std::uint64_t>(observer),
                                                               static_cast<std::uint64_t>(t));
                cascade_update(graph, support, observer, live_ids, crng, config.cascade);
            }
        }

        // (c) policy evaluation per live agent
        std::vector<std::pair<int, TickOutput>> outputs;
        outputs.reserve(live.size());
        for (const int id : live_ids) {
            TickContext ctx;
            ctx.tick = t;
            ctx.agent = config.roster.by_id(id);
            ctx.mood = state[static_cast<std::size_t>(id)].mood;
            ctx.trust = state[static_cast<std::size_t>(id)].trust;
            ctx.task_progress = state[static_cast<std::size_t>(id)].progress;
            ctx.defcon_active = defcon;
            if (mole_id && id == *mole_id) ctx.directive = directive_now;

            const auto& vis = channels[static_cast<std::size_t>(id)];
            for (const auto& msg : recent) {
                if (std::find(vis.begin(), vis.end(), msg.channel) != vis.end()) {
                    ctx.visible_history.push_back(msg);
                }
            }
            for (const auto& p : peers_all) {
                if (p.agent_id != id) ctx.co_present.push_back(p);
            }

            Rng prng = root.substream("policy").substream(static_cast<std::uint64_t>(id),
                                                          static_cast<std::uint64_t>(t));
            TickOutput out;
            if (config.policy_override) {
                out = config.policy_override(ctx, prng);
            } else if (config.policy_kind == PolicyKind::Scripted) {
                out = scripted_step(ctx, config.params, prng);
            } else {
                if (!config.llm) throw std::invalid_argument("run: LLM policy without endpoint config");
                try {
                    out = llm_step(ctx, *config.llm, prng);
                } catch (const LlmTransportError&) {
                    aborted = true;
                    break;
                }
            }
            out.message = enforce_defcon_template(out.message, defcon);
            outputs.emplace_back(id, std::move(out));
        }
        if (aborted) break;

        // (d) apply outputs in agent_id order
        for (auto& [id, out] : outputs) {
            auto& st = state[static_cast<std::size_t>(id)];
            if (out.intent == Intent::DEEP_WORK) st.progress = clamp01(st.progress + 0.02);
            if (out.intent == Intent::COLLABORATE) st.progress = clamp01(st.progress + 0.01);
            st.mood = clamp01(st.mood + 0.1 * (0.5 - st.mood) +
                              0.01 * (5.0 - static_cast<double>(out.stress)) / 5.0);
            if (fire_this_tick) st.trust = clamp01(st.trust - 0.05);

            if (out.suspect_id >= 0 && live.count(out.suspect_id) && out.flag_weight > 0.0) {
                graph.apply_flag(id, out.suspect_id, out.flag_weight);
            } else if (out.suspect_id >= 0 && !live.count(out.suspect_id)) {
                out.suspect.reset(); // suspect fired this very tick; drop the stale name
                out.suspect_id = -1;
            }

            if ((out.intent == Intent::SOCIALIZE || out.intent == Intent::COLLABORATE) &&
                !recent.empty()) {
                // bond with the latest visible poster in the chosen channel
                for (auto it = recent.rbegin(); it != recent.rend(); ++it) {
                    if (it->channel == out.channel && it->author_id != id &&
                        live.count(it->author_id)) {
                        graph.add_rapport(id, it->author_id, 0.05);
                        break;
                    }
                }
            }
            if (out.flagworthy) ++rec.flagworthy_counts[static_cast<std::size_t>(id)];
        }

        // (e) channel posts
        for (const auto& [id, out] : outputs) {
            recent.push_back(VisibleMessage{t, id, out.channel, out.flagworthy,
                                            static_cast<int>(out.message.size())});
        }
        while (!recent.empty() && recent.front().tick <= t - config.history_ticks) {
            recent.pop_front();
        }

        // (f) telemetry, one event per live agent
        for (const auto& [id, out] : outputs) {
            TickEvent e;
            e.run_id = rec.run_id;
            e.tick = t;
            e.agent_id = id;
            e.intent = out.intent;
            e.channel = out.channel;
            e.message_length = static_cast<int>(out.message.size());
            e.suspect = out.suspect;
            e.progress = state[static_cast<std::size_t>(id)].progress;
            e.stress = out.stress;
            e.parse_fallback = out.parse_fallback;
            rec.telemetry.push_back(std::move(e));
        }

        // (g) edge snapshots
        if (snapshot_ticks.count(t)) {
            rec.suspicion_snapshots.push_back(snapshot_of(graph, t));
            rec.rapport_snapshots.push_back(rapport_snapshot_of(graph, t));
        }

        last_tick = t;
        if (config.abort_after_tick && t >= *config.abort_after_tick) aborted = true;
    }

    rec.aborted = aborted || last_tick < horizon;
    rec.fired_at = fired_at;
    rec.last_tick = last_tick;
    rec.event_count = static_cast<std::int64_t>(rec.telemetry.size());
    const bool dev3 = rec.mole_fired_tick && *rec.mole_fired_tick < config.windows.pre_announce_lo;
    rec.validity = classify_validity(rec.last_tick, rec.event_count, dev3, n, horizon,
                                     config.validity_ratio);
    return rec;
}

} // namespace hbee
