#include "hbee/campaign.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace fs = std::filesystem;

namespace hbee {

RunManifestRow manifest_row_of(const RunRecord& rec) {
    RunManifestRow row;
    row.run_id = rec.run_id;
    row.condition = rec.condition;
    row.seed = rec.seed;
    row.mole_name = rec.mole_name;
    row.scenario_hash = rec.scenario_hash;
    row.validity = rec.validity;
    row.last_tick = rec.last_tick;
    row.event_count = rec.event_count;
    return row;
}

void write_manifest_csv(const std::string& path, const std::vector<RunManifestRow>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_manifest_csv: cannot open '" + path + "'");
    out << "run_id,condition,seed,mole_name,scenario_hash,validity,last_tick,event_count\n";
    for (const auto& r : rows) {
        out << r.run_id << ',' << to_string(r.condition) << ',' << r.seed << ',' << r.mole_name
            << ',' << r.scenario_hash << ',' << to_string(r.validity) << ',' << r.last_tick << ','
            << r.event_count << '\n';
    }
}

std::vector<RunManifestRow> read_manifest_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_manifest_csv: cannot open '" + path + "'");
    std::vector<RunManifestRow> rows;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (header) { header = false; continue; }
        std::stringstream ss(line);
        std::string f;
        std::vector<std::string> fields;
        while (std::getline(ss, f, ',')) fields.push_back(f);
        if (fields.size() != 8) throw std::runtime_error("read_manifest_csv: bad row '" + line + "'");
        RunManifestRow r;
        r.run_id = fields[0];
        r.condition = condition_from_string(fields[1]);
        r.seed = std::stoull(fields[2]);
        r.mole_name = fields[3];
        r.scenario_hash = fields[4];
        r.validity = validity_from_string(fields[5]);
        r.last_tick = std::stoi(fields[6]);
        r.event_count = std::stoll(fields[7]);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string run_dir_of(const std::string& campaign_dir, const std::string& run_id) {
    return (fs::path(campaign_dir) / "runs" / run_id).string();
}

void write_run_artifacts(const RunRecord& rec, const std::string& campaign_dir) {
    const fs::path dir = run_dir_of(campaign_dir, rec.run_id);
    fs::create_directories(dir);
    write_telemetry((dir / "telemetry.jsonl").string(), rec.telemetry);
    write_snapshots_csv((dir / "snapshots.csv").string(), rec.suspicion_snapshots);
    write_snapshots_csv((dir / "rapport.csv").string(), rec.rapport_snapshots);

    nlohmann::json stats;
    stats["run_id"] = rec.run_id;
    stats["condition"] = to_string(rec.condition);
    stats["seed"] = rec.seed;
    stats["mole_id"] = rec.mole_id ? nlohmann::json(*rec.mole_id) : nlohmann::json();
    stats["mole_name"] = rec.mole_name;
    stats["mole_fired_tick"] =
        rec.mole_fired_tick ? nlohmann::json(*rec.mole_fired_tick) : nlohmann::json();
    stats["validity"] = to_string(rec.validity);
    stats["last_tick"] = rec.last_tick;
    stats["event_count"] = rec.event_count;
    stats["scenario_hash"] = rec.scenario_hash;
    stats["flagworthy_counts"] = rec.flagworthy_counts;
    nlohmann::json fired = nlohmann::json::object();
    for (const auto& [id, tick] : rec.fired_at) fired[std::to_string(id)] = tick;
    stats["fired_at"] = fired;
    std::ofstream out(dir / "run_stats.json", std::ios::binary);
    out << stats.dump(2) << '\n';
}

bool run_artifacts_complete(const std::string& campaign_dir, const std::string& run_id) {
    const fs::path dir = run_dir_of(campaign_dir, run_id);
    return fs::exists(dir / "telemetry.jsonl") && fs::exists(dir / "snapshots.csv") &&
           fs::exists(dir / "run_stats.json");
}

std::vector<RunManifestRow> run_campaign(
    const CampaignPlan& plan,
    const std::function<RunConfig(Condition, std::uint64_t)>& make_config,
    const std::string& campaign_dir, int parallelism) {
    if (plan.seeds.empty()) throw std::invalid_argument("run_campaign: no seeds");
    fs::create_directories(fs::path(campaign_dir) / "runs");

    struct Job {
        Condition condition;
        std::uint64_t seed;
    };
    std::vector<Job> jobs;
    for (const auto c : plan.conditions) {
        for (const auto s : plan.seeds) jobs.push_back({c, s});
    }

    std::vector<RunManifestRow> rows(jobs.size());
    std::vector<char> row_ok(jobs.size(), 0);
    std::atomic<std::size_t> next{0};
    std::mutex io_mutex;

    const auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= jobs.size()) return;
            const auto& job = jobs[i];
            const std::string run_id = run_id_of(job.condition, job.seed);
            try {
                RunConfig cfg = make_config(job.condition, job.seed);
                if (run_artifacts_complete(campaign_dir, run_id)) {
                    // resume: rebuild the manifest row from run_stats.json
                    std::ifstream in(fs::path(run_dir_of(campaign_dir, run_id)) / "run_stats.json");
                    nlohmann::json j;
                    in >> j;
                    RunManifestRow r;
                    r.run_id = run_id;
                    r.condition = job.condition;
                    r.seed = job.seed;
                    r.mole_name = j.value("mole_name", std::string());
                    r.scenario_hash = j.value("scenario_hash", std::string());
                    r.validity = validity_from_string(j.value("validity", "VALID"));
                    r.last_tick = j.value("last_tick", 0);
                    r.event_count = j.value("event_count", static_cast<std::int64_t>(0));
                    rows[i] = std::move(r);
                    row_ok[i] = 1;
                    continue;
                }
                RunRecord rec = hbee::run(cfg);
                {
                    const std::lock_guard<std::mutex> lock(io_mutex);
                    write_run_artifacts(rec, campaign_dir);
                }
                rows[i] = manifest_row_of(rec);
                row_ok[i] = 1;
            } catch (const std::exception&) {
                // partial failure: leave the row out, keep the campaign going
                row_ok[i] = 0;
            }
        }
    };

    const int threads = std::max(1, parallelism);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    std::vector<RunManifestRow> manifest;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        if (row_ok[i]) manifest.push_back(rows[i]);
    }
    std::sort(manifest.begin(), manifest.end(), [](const RunManifestRow& a, const RunManifestRow& b) {
        if (a.condition != b.condition) return static_cast<int>(a.condition) < static_cast<int>(b.condition);
        return a.seed < b.seed;
    });
    write_manifest_csv((fs::path(campaign_dir) / "manifest.csv").string(), manifest);
    return manifest;
}

bool in_analysis_population(const RunManifestRow& row, const WindowSpec& windows) {
    if (row.validity == Validity::INVALID_DEV3) return false;
    return row.last_tick >= windows.snapshot_tick; // pre-announce window and T60 snapshot intact
}

PairExposures pair_exposures(const std::vector<std::vector<TickEvent>>& runs, const Roster& roster) {
    if (runs.empty()) throw std::invalid_argument("pair_exposures: no runs");
    const int n = roster.size();

    // channel post volume summed over runs
    std::array<double, kChannelCount> volume{};
    for (const auto& telemetry : runs) {
        for (const auto& e : telemetry) {
            volume[static_cast<std::size_t>(e.channel)] += 1.0;
        }
    }

    std::vector<std::vector<bool>> sees(static_cast<std::size_t>(n),
                                        std::vector<bool>(kChannelCount, false));
    for (int i = 0; i < n; ++i) {
        const auto& a = roster.by_id(i);
        for (int c = 0; c < kChannelCount; ++c) {
            sees[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] =
                channel_visible(static_cast<ChannelId>(c), a.org, a.role);
        }
    }

    PairExposures out;
    out.roster_size = n;
    out.values.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double e = 0.0;
            for (int c = 0; c < kChannelCount; ++c) {
                if (sees[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] &&
                    sees[static_cast<std::size_t>(j)][static_cast<std::size_t>(c)]) {
                    e += volume[static_cast<std::size_t>(c)];
                }
            }
            out.values.push_back(e);
        }
    }
    out.max_exposure = out.values.empty() ? 0.0 : *std::max_element(out.values.begin(), out.values.end());
    if (!out.values.empty() && out.max_exposure > 0.0) {
        const auto at_max = std::count(out.values.begin(), out.values.end(), out.max_exposure);
        out.saturation_fraction = static_cast<double>(at_max) / static_cast<double>(out.values.size());
    }
    return out;
}

AuditSlots audit_sample(const RunManifestRow& row, const std::vector<TickEvent>& telemetry,
                        int mole_id, const WindowSpec& windows) {
    const auto traits = traits_of(row.condition);
    if (!traits.has_mole || traits.adversary != AdversaryType::Adaptive) {
        throw std::invalid_argument("audit_sample: run '" + row.run_id + "' is not an adaptive run");
    }
    std::vector<int> turns;
    for (const auto& e : telemetry) {
        if (e.agent_id == mole_id && e.tick >= windows.pre_announce_lo &&
            e.tick <= windows.pre_announce_hi) {
            turns.push_back(e.tick);
        }
    }
    std::sort(turns.begin(), turns.end());
    turns.erase(std::unique(turns.begin(), turns.end()), turns.end());
    if (turns.size() < 5) {
        throw std::runtime_error("audit_sample: run '" + row.run_id + "' has fewer than 5 mole turns");
    }

    Rng rng = Rng::from_seed(row.seed, "audit");
    // partial Fisher-Yates over the turn list
    for (std::size_t i = 0; i < 5; ++i) {
        const std::size_t j = i + rng.below(turns.size() - i);
        std::swap(turns[i], turns[j]);
    }
    AuditSlots slots;
    slots.run_id = row.run_id;
    slots.ticks.assign(turns.begin(), turns.begin() + 5);
    std::sort(slots.ticks.begin(), slots.ticks.end());
    return slots;
}

void write_audit_slots_csv(const std::string& path, const std::vector<AuditSlots>& slots) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_audit_slots_csv: cannot open '" + path + "'");
    out << "run_id,tick,rating\n";
    for (const auto& s : slots) {
        for (const int t : s.ticks) out << s.run_id << ',' << t << ",\n";
    }
}

std::map<std::string, FidelityAudit> ingest_ratings_csv(const std::string& path,
                                                        const std::vector<AuditSlots>& slots,
                                                        double pass_cutoff) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("ingest_ratings_csv: cannot open '" + path + "'");

    std::map<std::string, std::map<int, int>> ratings; // run_id -> tick -> rating
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (header) { header = false; continue; }
        std::stringstream ss(line);
        std::string run_id, tick_s, rating_s;
        std::getline(ss, run_id, ',');
        std::getline(ss, tick_s, ',');
        std::getline(ss, rating_s, ',');
        if (rating_s.empty()) continue; // unrated slot
        const int rating = std::stoi(rating_s);
        if (rating < 1 || rating > 5) {
            throw std::runtime_error("ingest_ratings_csv: rating out of 1..5 in '" + line + "'");
        }
        ratings[run_id][std::stoi(tick_s)] = rating;
    }

    std::map<std::string, FidelityAudit> audits;
    for (const auto& s : slots) {
        FidelityAudit a;
        a.run_id = s.run_id;
        a.ticks = s.ticks;
        const auto it = ratings.find(s.run_id);
        double sum = 0.0;
        int count = 0;
        for (const int t : s.ticks) {
            if (it != ratings.end()) {
                const auto rt = it->second.find(t);
                if (rt != it->second.end()) {
                    a.ratings.push_back(rt->second);
                    sum += rt->second;
                    ++count;
                    continue;
                }
            }
            a.ratings.push_back(0); // unrated
        }
        a.complete = count == static_cast<int>(s.ticks.size());
        if (a.complete) {
            a.mean = sum / static_cast<double>(count);
            a.pass = a.mean >= pass_cutoff;
        }
        audits[s.run_id] = std::move(a);
    }
    return audits;
}

} // namespace hbee
