#pragma once

#include "hbee/policy.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace hbee {

// OpenAI-compatible chat-completions endpoint. The auth token comes from
// the environment variable named in api_key_env, never from config files.
struct LlmEndpointConfig {
    std::string base_url = "http://127.0.0.1:8000";
    std::string chat_path = "/v1/chat/completions";
    std::string model = "local-chat";
    std::string api_key_env = "HBEE_LLM_API_KEY";
    double temperature = 0.85;
    int max_tokens = 4096;
    bool disable_thinking = true; // sent as "enable_thinking": false
    int max_retries = 3;
    int timeout_sec = 120;
    bool debug_log_requests = false;
    std::string debug_log_path = "llm_requests.jsonl";
};

struct LlmTransportError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Static system prompt, identical across every call so a serving layer
// can cache its prefix.
std::string llm_system_prompt();

// Dynamic per-tick block: role context, state, visible history, the mole
// directive when active, and the DEFCON template instruction.
std::string llm_user_prompt(const TickContext& ctx);

// Full request body: model, messages, sampling parameters, thinking
// disabled. Pure; unit-testable without a server.
nlohmann::json build_chat_request(const TickContext& ctx, const LlmEndpointConfig& cfg);

// Strict labeled-line grammar:
//   MESSAGE: <text>
//   CHANNEL: <General|DevDen|GovRoom|OpsRoom|ExecVault>
//   STRESS: <1..10>
//   INTENT: <DEEP_WORK|...|ESCALATE>
//   SUSPECT: <name|none>
// Channel must be visible to the agent; suspect must name a co-present
// peer. Returns nullopt on any violation.
std::optional<TickOutput> parse_llm_completion(const std::string& text, const TickContext& ctx);

// Fallback emitted after max_retries unparseable completions; flagged in
// telemetry via parse_fallback.
TickOutput llm_fallback_output(const TickContext& ctx);

// One agent-tick: POST, parse, retry on unparseable output, fall back
// after the retry budget. Transport failures (connect/HTTP errors) after
// the same budget throw LlmTransportError, which aborts the run.
TickOutput llm_step(const TickContext& ctx, const LlmEndpointConfig& cfg, Rng& rng);

} // namespace hbee
