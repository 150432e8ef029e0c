#pragma once

#include "hbee/engine.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hbee {

struct RunManifestRow {
    std::string run_id;
    Condition condition = Condition::C5_BlindNoMole;
    std::uint64_t seed = 0;
    std::string mole_name; // empty for C5
    std::string scenario_hash;
    Validity validity = Validity::VALID;
    int last_tick = 0;
    std::int64_t event_count = 0;
};

RunManifestRow manifest_row_of(const RunRecord& rec);

// CSV: run_id,condition,seed,mole_name,scenario_hash,validity,last_tick,event_count
void write_manifest_csv(const std::string& path, const std::vector<RunManifestRow>& rows);
std::vector<RunManifestRow> read_manifest_csv(const std::string& path);

// Per-run on-disk layout under <campaign>/runs/<run_id>/:
//   telemetry.jsonl, snapshots.csv, rapport.csv, run_stats.json
std::string run_dir_of(const std::string& campaign_dir, const std::string& run_id);
void write_run_artifacts(const RunRecord& rec, const std::string& campaign_dir);
bool run_artifacts_complete(const std::string& campaign_dir, const std::string& run_id);

struct CampaignPlan {
    std::vector<Condition> conditions{kAllConditions.begin(), kAllConditions.end()};
    std::vector<std::uint64_t> seeds; // identical across conditions (pairing requirement)
};

// Runs conditions x seeds with bounded parallelism. Completed runs
// (artifacts present) are skipped, so an interrupted campaign resumes.
// Per-run faults are recorded in the manifest and do not stop the
// campaign. Returns the full manifest, sorted by (condition, seed).
std::vector<RunManifestRow> run_campaign(const CampaignPlan& plan,
                                         const std::function<RunConfig(Condition, std::uint64_t)>& make_config,
                                         const std::string& campaign_dir, int parallelism);

// A run participates in window-scoped analyses when it is not a DEV-3
// collision and its pre-announce window (and T60 snapshot) is intact.
bool in_analysis_population(const RunManifestRow& row, const WindowSpec& windows);

// Pairwise message exposure over the supplied runs: for every unordered
// roster pair {i, j}, the number of posted messages (any author) in
// channels visible to both, summed across runs.
struct PairExposures {
    std::vector<double> values; // one per unordered pair, (i,j) i<j in row-major order
    int roster_size = 0;
    double max_exposure = 0.0;
    double saturation_fraction = 0.0; // fraction of pairs at max_exposure
};
PairExposures pair_exposures(const std::vector<std::vector<TickEvent>>& runs, const Roster& roster);

// Behavioral fidelity audit over one adaptive run: five distinct mole
// ticks drawn without replacement from the pre-announce turns,
// deterministic per (seed, "audit").
struct AuditSlots {
    std::string run_id;
    std::vector<int> ticks; // sorted, size 5
};
AuditSlots audit_sample(const RunManifestRow& row, const std::vector<TickEvent>& telemetry,
                        int mole_id, const WindowSpec& windows);

struct FidelityAudit {
    std::string run_id;
    std::vector<int> ticks;
    std::vector<int> ratings; // 1..5, human-entered
    double mean = 0.0;
    bool pass = false;
    bool complete = false;
};

// ratings CSV: run_id,tick,rating (header included). Slots without a
// rating leave the audit incomplete.
void write_audit_slots_csv(const std::string& path, const std::vector<AuditSlots>& slots);
std::map<std::string, FidelityAudit> ingest_ratings_csv(const std::string& path,
                                                        const std::vector<AuditSlots>& slots,
                                                        double pass_cutoff = 3.5);

} // namespace hbee
