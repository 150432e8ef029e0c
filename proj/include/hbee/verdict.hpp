#pragma once

#include "hbee/campaign.hpp"
#include "hbee/stats.hpp"

#include <nlohmann/json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hbee {

// Pre-registered thresholds. Defaults are the committed values; any
// override is echoed into the report provenance.
struct Thresholds {
    double alpha = 0.05;
    double equivalence_bound_per_100 = 5.0; // scales with roster size
    double negligible_delta = 0.147;
    double h3_delta_floor = 0.33;
    double epsilon_gini = 0.10;
    double fidelity_cutoff = 3.5;

    double equivalence_bound(int roster_size) const {
        return equivalence_bound_per_100 * static_cast<double>(roster_size) / 100.0;
    }
};

enum class VerdictLabel { SUPPORTED, NOT_SUPPORTED, FAIL, PENDING };
std::string_view to_string(VerdictLabel v);

struct Criterion {
    std::string name;
    std::string threshold; // human-readable bound
    double observed = 0.0;
    bool pass = false;
};

struct HypothesisVerdict {
    std::string hypothesis; // H1, H2a, H2b, H3, H4, H5
    std::string population; // Primary | Sensitivity | NA
    std::vector<Criterion> criteria;
    VerdictLabel verdict = VerdictLabel::PENDING;
    bool direction_inverted = false;
    std::string note;
    nlohmann::json stats = nlohmann::json::object();
};

nlohmann::json to_json(const HypothesisVerdict& v);

// --- pure criteria judges; verdicts are mechanical functions of the
// --- computed statistics, with no override path

struct H1Stats {
    double median = 0.0;
    stats::EffectEstimate median_ci;
    double delta = 0.0;
    double p = 1.0;
    int n = 0;
};
HypothesisVerdict judge_h1(const H1Stats& s, const Thresholds& th);

struct H2Stats {
    double mean_diff = 0.0;
    stats::EffectEstimate mean_ci;
    double p = 1.0;
    double delta = 0.0;
    int n_pairs = 0;
};
HypothesisVerdict judge_h2(std::string_view hypothesis, std::string_view population,
                           const H2Stats& s, double equivalence_bound, const Thresholds& th);

struct H3Stats {
    double u = 0.0;
    double p = 1.0;
    double delta = 0.0;
    stats::EffectEstimate delta_ci;
    int n_mole = 0;
    int n_nonmole = 0;
};
HypothesisVerdict judge_h3(const H3Stats& s, const Thresholds& th);

struct H4Stats {
    double gini_hbee = 0.0;
    double gini_enron = 0.0;
    double saturation_fraction = 0.0;
    std::int64_t n_pairs = 0;
    std::int64_t n_nodes = 0;
};
HypothesisVerdict judge_h4(const H4Stats& s, const Thresholds& th);

HypothesisVerdict judge_h5_pending(std::string_view reason);
HypothesisVerdict judge_h5(const H1Stats& replication, const Thresholds& th);

// --- campaign-level evaluation

struct BootstrapSettings {
    int B = 1000;
    std::uint64_t seed = 42;
};

// Everything the evaluators need from a loaded campaign.
struct CampaignAnalysisInputs {
    std::vector<RunManifestRow> manifest;
    std::string campaign_dir;
    Roster roster;
    WindowSpec windows;
    Thresholds thresholds;
    BootstrapSettings bootstrap;
    std::optional<std::string> ratings_path;
    std::optional<std::string> enron_path;
    std::optional<std::string> replication_manifest; // H5
};

struct FidelitySummary {
    int pass_count = 0;
    int fail_count = 0;
    int incomplete_count = 0;
    std::map<std::string, int> pass_by_condition;  // "C3". "C4"
    std::map<std::string, double> spearman_by_condition;
    std::map<std::string, bool> spearman_defined;
    std::map<std::string, FidelityAudit> audits;
};

struct AnalysisResult {
    std::vector<HypothesisVerdict> verdicts;
    std::optional<FidelitySummary> fidelity;
    nlohmann::json details = nlohmann::json::object();
};

// Per-run mole rank over the pre-announce window, from the T29/T60
// snapshots. Returns nullopt when the run has no usable snapshot.
std::optional<int> mole_preannounce_rank(const std::string& campaign_dir, const RunManifestRow& row,
                                         const Roster& roster, const WindowSpec& windows);

// Mole suspicion in-degree at the snapshot tick.
std::optional<int> mole_indegree_at_snapshot(const std::string& campaign_dir,
                                             const RunManifestRow& row, const Roster& roster,
                                             const WindowSpec& windows);

// The H3 non-mole draw for a C5 run: seed-deterministic under the
// "h3-nonmole" tag; a drawn agent that was fired by the snapshot tick
// triggers a redraw restricted to live non-Lead/Officer agents.
int h3_nonmole_agent(const RunManifestRow& row, const Roster& roster,
                     const std::vector<int>& fired_by_snapshot);

AnalysisResult analyze_campaign(const CampaignAnalysisInputs& in);

} // namespace hbee
