#include "hbee/telemetry.hpp"

#include <zlib.h>

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hbee {

namespace {

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

bool ends_with(const std::string& s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

} // namespace

std::string to_jsonl(const TickEvent& e) {
    char progress_buf[32];
    std::snprintf(progress_buf, sizeof(progress_buf), "%.6f", e.progress);

    std::string out = "{\"run_id\":\"" + json_escape(e.run_id) + "\"";
    out += ",\"tick\":" + std::to_string(e.tick);
    out += ",\"agent_id\":" + std::to_string(e.agent_id);
    out += ",\"intent\":\"" + std::string(to_string(e.intent)) + "\"";
    out += ",\"channel\":\"" + std::string(to_string(e.channel)) + "\"";
    out += ",\"message_length\":" + std::to_string(e.message_length);
    out += ",\"suspect\":";
    out += e.suspect ? "\"" + json_escape(*e.suspect) + "\"" : "null";
    out += ",\"progress\":" + std::string(progress_buf);
    out += ",\"stress\":" + std::to_string(e.stress);
    out += ",\"parse_fallback\":";
    out += e.parse_fallback ? "true" : "false";
    out += "}";
    return out;
}

TickEvent tick_event_from_jsonl(const std::string& line) {
    nlohmann::json j = nlohmann::json::parse(line);
    TickEvent e;
    e.run_id = j.at("run_id").get<std::string>();
    e.tick = j.at("tick").get<int>();
    e.agent_id = j.at("agent_id").get<int>();
    e.intent = intent_from_string(j.at("intent").get<std::string>());
    e.channel = channel_from_string(j.at("channel").get<std::string>());
    e.message_length = j.at("message_length").get<int>();
    if (!j.at("suspect").is_null()) e.suspect = j.at("suspect").get<std::string>();
    e.progress = j.at("progress").get<double>();
    e.stress = j.at("stress").get<int>();
    e.parse_fallback = j.at("parse_fallback").get<bool>();
    return e;
}

void write_telemetry(const std::string& path, const std::vector<TickEvent>& events) {
    std::string payload;
    for (const auto& e : events) {
        payload += to_jsonl(e);
        payload += '\n';
    }
    if (ends_with(path, ".gz")) {
        gzFile gz = gzopen(path.c_str(), "wb");
        if (!gz) throw std::runtime_error("write_telemetry: cannot open '" + path + "'");
        if (!payload.empty() &&
            gzwrite(gz, payload.data(), static_cast<unsigned>(payload.size())) !=
                static_cast<int>(payload.size())) {
            gzclose(gz);
            throw std::runtime_error("write_telemetry: gzwrite failed for '" + path + "'");
        }
        gzclose(gz);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_telemetry: cannot open '" + path + "'");
    out << payload;
}

std::vector<TickEvent> read_telemetry(const std::string& path) {
    std::string payload;
    if (ends_with(path, ".gz")) {
        gzFile gz = gzopen(path.c_str(), "rb");
        if (!gz) throw std::runtime_error("read_telemetry: cannot open '" + path + "'");
        char buf[1 << 16];
        int got;
        while ((got = gzread(gz, buf, sizeof(buf))) > 0) {
            payload.append(buf, static_cast<std::size_t>(got));
        }
        gzclose(gz);
    } else {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw std::runtime_error("read_telemetry: cannot open '" + path + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        payload = ss.str();
    }

    std::vector<TickEvent> events;
    std::size_t start = 0;
    while (start < payload.size()) {
        std::size_t end = payload.find('\n', start);
        if (end == std::string::npos) end = payload.size();
        if (end > start) {
            events.push_back(tick_event_from_jsonl(payload.substr(start, end - start)));
        }
        start = end + 1;
    }
    return events;
}

std::string_view to_string(Validity v) {
    switch (v) {
        case Validity::VALID: return "VALID";
        case Validity::INVALID_SHORT: return "INVALID_SHORT";
        case Validity::INVALID_DEV3: return "INVALID_DEV3";
    }
    return "?";
}

Validity validity_from_string(std::string_view s) {
    if (s == "VALID") return Validity::VALID;
    if (s == "INVALID_SHORT") return Validity::INVALID_SHORT;
    if (s == "INVALID_DEV3") return Validity::INVALID_DEV3;
    throw std::invalid_argument("validity: unknown value '" + std::string(s) + "'");
}

std::int64_t validity_event_threshold(int roster_size, int horizon, double validity_ratio) {
    return static_cast<std::int64_t>(
        std::ceil(validity_ratio * static_cast<double>(roster_size) * static_cast<double>(horizon)));
}

Validity classify_validity(int last_tick, std::int64_t event_count, bool mole_fired_before_preannounce,
                           int roster_size, int horizon, double validity_ratio) {
    if (mole_fired_before_preannounce) return Validity::INVALID_DEV3;
    const auto threshold = validity_event_threshold(roster_size, horizon, validity_ratio);
    if (last_tick == horizon && event_count >= threshold) return Validity::VALID;
    return Validity::INVALID_SHORT;
}

std::vector<TickEvent> window_slice(const std::vector<TickEvent>& events, int lo, int hi) {
    std::vector<TickEvent> out;
    for (const auto& e : events) {
        if (e.tick >= lo && e.tick <= hi) out.push_back(e);
    }
    return out;
}

} // namespace hbee
