#pragma once

#include "hbee/org.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hbee {

// One externally observable record per live agent per tick. Field set is
// frozen; progress is serialized with six decimals so that
// serialize -> parse -> serialize is byte-identical.
struct TickEvent {
    std::string run_id;
    int tick = 0;
    int agent_id = 0;
    Intent intent = Intent::SOCIALIZE;
    ChannelId channel = ChannelId::General;
    int message_length = 0;
    std::optional<std::string> suspect;
    double progress = 0.0;
    int stress = 1;
    bool parse_fallback = false;
};

std::string to_jsonl(const TickEvent& e);
TickEvent tick_event_from_jsonl(const std::string& line);

// Plain or gzip-compressed (by .gz extension) JSONL, one event per line.
void write_telemetry(const std::string& path, const std::vector<TickEvent>& events);
std::vector<TickEvent> read_telemetry(const std::string& path);

enum class Validity { VALID, INVALID_SHORT, INVALID_DEV3 };

std::string_view to_string(Validity v);
Validity validity_from_string(std::string_view s);

// VALID requires a full-horizon run with at least
// ceil(validity_ratio * roster * horizon) events; a mole fired before the
// pre-announce window is INVALID_DEV3 regardless of length.
Validity classify_validity(int last_tick, std::int64_t event_count, bool mole_fired_before_preannounce,
                           int roster_size, int horizon, double validity_ratio = 0.95);

std::int64_t validity_event_threshold(int roster_size, int horizon, double validity_ratio = 0.95);

// Events with tick in [lo, hi], stable order.
std::vector<TickEvent> window_slice(const std::vector<TickEvent>& events, int lo, int hi);

} // namespace hbee
