#include "hbee/verdict.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>

namespace fs = std::filesystem;

namespace hbee {

std::string_view to_string(VerdictLabel v) {
    switch (v) {
        case VerdictLabel::SUPPORTED: return "SUPPORTED";
        case VerdictLabel::NOT_SUPPORTED: return "NOT_SUPPORTED";
        case VerdictLabel::FAIL: return "FAIL";
        case VerdictLabel::PENDING: return "PENDING";
    }
    return "?";
}

nlohmann::json to_json(const HypothesisVerdict& v) {
    nlohmann::json j;
    j["hypothesis"] = v.hypothesis;
    j["population"] = v.population;
    j["verdict"] = to_string(v.verdict);
    j["direction_inverted"] = v.direction_inverted;
    j["note"] = v.note;
    j["criteria"] = nlohmann::json::array();
    for (const auto& c : v.criteria) {
        j["criteria"].push_back({{"name", c.name},
                                 {"threshold", c.threshold},
                                 {"observed", c.observed},
                                 {"pass", c.pass}});
    }
    j["stats"] = v.stats;
    return j;
}

namespace {

char buf_threshold[64];

std::string fmt(const char* format, double v) {
    std::snprintf(buf_threshold, sizeof(buf_threshold), format, v);
    return buf_threshold;
}

} // namespace

HypothesisVerdict judge_h1(const H1Stats& s, const Thresholds& th) {
    HypothesisVerdict v;
    v.hypothesis = "H1";
    v.population = "NA";
    v.criteria.push_back({"p_vs_uniform", "p > " + fmt("%.2f", th.alpha), s.p, s.p > th.alpha});
    v.criteria.push_back({"negligible_delta", "|delta| < " + fmt("%.3f", th.negligible_delta),
                          s.delta, std::fabs(s.delta) < th.negligible_delta});
    const bool all = std::all_of(v.criteria.begin(), v.criteria.end(),
                                 [](const Criterion& c) { return c.pass; });
    v.verdict = all ? VerdictLabel::SUPPORTED : VerdictLabel::NOT_SUPPORTED;
    v.stats = {{"median", s.median},
               {"ci_low", s.median_ci.ci_low},
               {"ci_high", s.median_ci.ci_high},
               {"delta", s.delta},
               {"p", s.p},
               {"n", s.n}};
    return v;
}

HypothesisVerdict judge_h2(std::string_view hypothesis, std::string_view population,
                           const H2Stats& s, double equivalence_bound, const Thresholds& th) {
    HypothesisVerdict v;
    v.hypothesis = std::string(hypothesis);
    v.population = std::string(population);
    v.criteria.push_back({"mean_within_bound", "|mean| <= " + fmt("%.2f", equivalence_bound),
                          s.mean_diff, std::fabs(s.mean_diff) <= equivalence_bound});
    v.criteria.push_back({"p_above_alpha", "p > " + fmt("%.2f", th.alpha), s.p, s.p > th.alpha});
    v.criteria.push_back({"negligible_delta", "|delta| < " + fmt("%.3f", th.negligible_delta),
                          s.delta, std::fabs(s.delta) < th.negligible_delta});
    const bool all = std::all_of(v.criteria.begin(), v.criteria.end(),
                                 [](const Criterion& c) { return c.pass; });
    v.verdict = all ? VerdictLabel::SUPPORTED : VerdictLabel::NOT_SUPPORTED;
    v.stats = {{"mean_diff", s.mean_diff},
               {"ci_low", s.mean_ci.ci_low},
               {"ci_high", s.mean_ci.ci_high},
               {"p", s.p},
               {"delta", s.delta},
               {"n_pairs", s.n_pairs}};
    return v;
}

HypothesisVerdict judge_h3(const H3Stats& s, const Thresholds& th) {
    HypothesisVerdict v;
    v.hypothesis = "H3";
    v.population = "NA";
    v.criteria.push_back({"p_below_alpha", "p < " + fmt("%.2f", th.alpha), s.p, s.p < th.alpha});
    v.criteria.push_back({"delta_floor", "delta >= +" + fmt("%.2f", th.h3_delta_floor), s.delta,
                          s.delta >= th.h3_delta_floor});
    const bool all = std::all_of(v.criteria.begin(), v.criteria.end(),
                                 [](const Criterion& c) { return c.pass; });
    v.verdict = all ? VerdictLabel::SUPPORTED : VerdictLabel::NOT_SUPPORTED;
    v.direction_inverted = s.p < th.alpha && s.delta <= -th.h3_delta_floor;
    v.stats = {{"u", s.u},
               {"p", s.p},
               {"delta", s.delta},
               {"ci_low", s.delta_ci.ci_low},
               {"ci_high", s.delta_ci.ci_high},
               {"n_mole", s.n_mole},
               {"n_nonmole", s.n_nonmole}};
    return v;
}

HypothesisVerdict judge_h4(const H4Stats& s, const Thresholds& th) {
    HypothesisVerdict v;
    v.hypothesis = "H4";
    v.population = "NA";
    const double gap = std::fabs(s.gini_hbee - s.gini_enron);
    v.criteria.push_back(
        {"gini_gap", "|gini_hbee - gini_enron| <= " + fmt("%.2f", th.epsilon_gini), gap,
         gap <= th.epsilon_gini});
    v.verdict = v.criteria.front().pass ? VerdictLabel::SUPPORTED : VerdictLabel::FAIL;
    v.stats = {{"gini_hbee", s.gini_hbee},
               {"gini_enron", s.gini_enron},
               {"gap", gap},
               {"n_pairs", s.n_pairs},
               {"n_nodes", s.n_nodes}};
    if (v.verdict == VerdictLabel::FAIL) {
        // saturation diagnostic accompanies a FAIL
        v.stats["saturation_fraction"] = s.saturation_fraction;
        v.note = "saturation diagnostic: " + fmt("%.3f", s.saturation_fraction) +
                 " of pairs sit at the maximum observed exposure";
    }
    return v;
}

HypothesisVerdict judge_h5_pending(std::string_view reason) {
    HypothesisVerdict v;
    v.hypothesis = "H5";
    v.population = "NA";
    v.verdict = VerdictLabel::PENDING;
    v.note = std::string(reason);
    return v;
}

HypothesisVerdict judge_h5(const H1Stats& replication, const Thresholds& th) {
    HypothesisVerdict v = judge_h1(replication, th);
    v.hypothesis = "H5";
    return v;
}

namespace {

std::vector<EdgeSnapshot> load_run_snapshots(const std::string& campaign_dir,
                                             const std::string& run_id) {
    return read_snapshots_csv(
        (fs::path(run_dir_of(campaign_dir, run_id)) / "snapshots.csv").string());
}

std::vector<TickEvent> load_run_telemetry(const std::string& campaign_dir,
                                          const std::string& run_id) {
    return read_telemetry((fs::path(run_dir_of(campaign_dir, run_id)) / "telemetry.jsonl").string());
}

std::map<int, int> load_fired_map(const std::string& campaign_dir, const std::string& run_id) {
    std::ifstream in(fs::path(run_dir_of(campaign_dir, run_id)) / "run_stats.json");
    std::map<int, int> fired;
    if (!in) return fired;
    nlohmann::json j;
    in >> j;
    if (j.contains("fired_at")) {
        for (const auto& [key, val] : j["fired_at"].items()) {
            fired[std::stoi(key)] = val.get<int>();
        }
    }
    return fired;
}

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

} // namespace

std::optional<int> mole_preannounce_rank(const std::string& campaign_dir, const RunManifestRow& row,
                                         const Roster& roster, const WindowSpec& windows) {
    if (row.mole_name.empty()) return std::nullopt;
    const auto* mole = roster.find_by_name(row.mole_name);
    if (!mole) return std::nullopt;
    const auto snaps = load_run_snapshots(campaign_dir, row.run_id);
    const auto* end = find_snapshot(snaps, windows.snapshot_tick);
    if (!end) return std::nullopt;
    const auto* before = find_snapshot(snaps, windows.baseline_hi);
    const auto ranking = ueba_ranking(*end, before, roster.size(), windows.pre_announce_lo,
                                      windows.pre_announce_hi);
    return ranking.ranks[static_cast<std::size_t>(mole->agent_id)];
}

std::optional<int> mole_indegree_at_snapshot(const std::string& campaign_dir,
                                             const RunManifestRow& row, const Roster& roster,
                                             const WindowSpec& windows) {
    if (row.mole_name.empty()) return std::nullopt;
    const auto* mole = roster.find_by_name(row.mole_name);
    if (!mole) return std::nullopt;
    const auto snaps = load_run_snapshots(campaign_dir, row.run_id);
    const auto* snap = find_snapshot(snaps, windows.snapshot_tick);
    if (!snap) return std::nullopt;
    return snap->in_degree(mole->agent_id);
}

int h3_nonmole_agent(const RunManifestRow& row, const Roster& roster,
                     const std::vector<int>& fired_by_snapshot) {
    Rng rng = Rng::from_seed(row.seed, "h3-nonmole");
    const int first = static_cast<int>(rng.below(static_cast<std::uint64_t>(roster.size())));
    const bool fired = std::find(fired_by_snapshot.begin(), fired_by_snapshot.end(), first) !=
                       fired_by_snapshot.end();
    if (!fired) return first;
    // collision with a fired agent: redraw among live non-Lead/Officer agents
    std::vector<int> candidates;
    for (const auto& a : roster.agents) {
        if (a.role == Role::Lead || a.role == Role::Officer) continue;
        if (std::find(fired_by_snapshot.begin(), fired_by_snapshot.end(), a.agent_id) !=
            fired_by_snapshot.end()) {
            continue;
        }
        candidates.push_back(a.agent_id);
    }
    if (candidates.empty()) return first; // pathological roster; keep the original draw
    return candidates[rng.below(candidates.size())];
}

namespace {

struct RankTable {
    // run_id -> mole pre-announce rank
    std::map<std::string, int> ranks;
};

} // namespace

AnalysisResult analyze_campaign(const CampaignAnalysisInputs& in) {
    AnalysisResult result;
    const int n_roster = in.roster.size();
    const auto& th = in.thresholds;

    std::map<Condition, std::vector<RunManifestRow>> by_condition;
    for (const auto& row : in.manifest) by_condition[row.condition].push_back(row);

    const auto population_rows = [&](Condition c) {
        std::vector<RunManifestRow> rows;
        for (const auto& row : by_condition[c]) {
            if (in_analysis_population(row, in.windows)) rows.push_back(row);
        }
        return rows;
    };

    // mole ranks per run, computed once
    RankTable rank_table;
    for (const auto c : {Condition::C1_CascadeNaive, Condition::C2_BlindNaive,
                         Condition::C3_CascadeAdaptive, Condition::C4_BlindAdaptive}) {
        for (const auto& row : population_rows(c)) {
            const auto r = mole_preannounce_rank(in.campaign_dir, row, in.roster, in.windows);
            if (r) rank_table.ranks[row.run_id] = *r;
        }
    }

    // ---- fidelity audits (needed by H2 primary)
    std::optional<FidelitySummary> fidelity;
    std::vector<AuditSlots> all_slots;
    if (in.ratings_path) {
        FidelitySummary summary;
        std::map<std::string, std::vector<double>> rating_means;  // condition -> means
        std::map<std::string, std::vector<double>> rating_ranks;  // condition -> mole ranks
        for (const auto c : {Condition::C3_CascadeAdaptive, Condition::C4_BlindAdaptive}) {
            for (const auto& row : by_condition[c]) {
                const auto* mole = in.roster.find_by_name(row.mole_name);
                if (!mole) continue;
                try {
                    const auto telemetry = load_run_telemetry(in.campaign_dir, row.run_id);
                    all_slots.push_back(audit_sample(row, telemetry, mole->agent_id, in.windows));
                } catch (const std::exception&) {
                    // runs without five mole turns carry no audit
                }
            }
        }
        const auto audits = ingest_ratings_csv(*in.ratings_path, all_slots, th.fidelity_cutoff);
        for (const auto& [run_id, audit] : audits) {
            if (!audit.complete) {
                ++summary.incomplete_count;
                continue;
            }
            const std::string cond = run_id.substr(0, 2);
            if (audit.pass) {
                ++summary.pass_count;
                ++summary.pass_by_condition[cond];
            } else {
                ++summary.fail_count;
            }
            const auto rank_it = rank_table.ranks.find(run_id);
            if (rank_it != rank_table.ranks.end()) {
                rating_means[cond].push_back(audit.mean);
                rating_ranks[cond].push_back(static_cast<double>(rank_it->second));
            }
        }
        for (const auto& [cond, means] : rating_means) {
            if (means.size() >= 2) {
                const auto rho = stats::spearman_rho(means, rating_ranks[cond]);
                summary.spearman_by_condition[cond] = rho.defined ? rho.rho : 0.0;
                summary.spearman_defined[cond] = rho.defined;
            }
        }
        summary.audits = audits;
        fidelity = std::move(summary);
    }
    result.fidelity = fidelity;

    // ---- H1: naive blind baseline vs uniform[1, N]
    {
        std::vector<double> ranks;
        for (const auto& row : population_rows(Condition::C2_BlindNaive)) {
            const auto it = rank_table.ranks.find(row.run_id);
            if (it != rank_table.ranks.end()) ranks.push_back(static_cast<double>(it->second));
        }
        if (ranks.size() < 2) {
            HypothesisVerdict v;
            v.hypothesis = "H1";
            v.population = "NA";
            v.verdict = VerdictLabel::PENDING;
            v.note = "fewer than 2 usable C2 runs";
            result.verdicts.push_back(std::move(v));
        } else {
            std::vector<double> reference(static_cast<std::size_t>(n_roster));
            std::iota(reference.begin(), reference.end(), 1.0);
            H1Stats s;
            s.n = static_cast<int>(ranks.size());
            s.median = median_of(ranks);
            s.median_ci = stats::bca_interval(
                ranks, [](std::span<const double> v) {
                    return median_of(std::vector<double>(v.begin(), v.end()));
                },
                in.bootstrap.B, in.bootstrap.seed);
            s.delta = stats::cliffs_delta(ranks, reference);
            s.p = stats::mann_whitney_u(ranks, reference).p_value;
            result.verdicts.push_back(judge_h1(s, th));
            result.details["h1_ranks"] = ranks;
        }
    }

    // ---- H2: equivalence, pre-reg labels (H2a = blind, H2b = cascade)
    const double bound = th.equivalence_bound(n_roster);
    struct Pairing {
        const char* label;
        Condition treat;
        Condition ctrl;
    };
    for (const auto& pairing : {Pairing{"H2a", Condition::C4_BlindAdaptive, Condition::C2_BlindNaive},
                                Pairing{"H2b", Condition::C3_CascadeAdaptive, Condition::C1_CascadeNaive}}) {
        const auto treat_rows = population_rows(pairing.treat);
        const auto ctrl_rows = population_rows(pairing.ctrl);
        std::map<std::uint64_t, std::pair<const RunManifestRow*, const RunManifestRow*>> by_seed;
        for (const auto& row : treat_rows) by_seed[row.seed].first = &row;
        for (const auto& row : ctrl_rows) by_seed[row.seed].second = &row;

        for (const bool primary : {true, false}) {
            const char* population = primary ? "Primary" : "Sensitivity";
            if (primary && !fidelity) {
                HypothesisVerdict v;
                v.hypothesis = pairing.label;
                v.population = population;
                v.verdict = VerdictLabel::PENDING;
                v.note = "fidelity ratings not supplied; primary analysis incomplete";
                result.verdicts.push_back(std::move(v));
                continue;
            }
            std::vector<double> diffs;
            for (const auto& [seed, pr] : by_seed) {
                if (!pr.first || !pr.second) continue; // pair missing a side
                const auto t_it = rank_table.ranks.find(pr.first->run_id);
                const auto c_it = rank_table.ranks.find(pr.second->run_id);
                if (t_it == rank_table.ranks.end() || c_it == rank_table.ranks.end()) continue;
                if (primary) {
                    const auto audit = fidelity->audits.find(pr.first->run_id);
                    if (audit == fidelity->audits.end() || !audit->second.complete ||
                        !audit->second.pass) {
                        continue;
                    }
                }
                diffs.push_back(static_cast<double>(t_it->second - c_it->second));
            }
            if (diffs.empty()) {
                HypothesisVerdict v;
                v.hypothesis = pairing.label;
                v.population = population;
                v.verdict = VerdictLabel::PENDING;
                v.note = "no surviving pairs";
                result.verdicts.push_back(std::move(v));
                continue;
            }
            H2Stats s;
            s.n_pairs = static_cast<int>(diffs.size());
            s.mean_diff = std::accumulate(diffs.begin(), diffs.end(), 0.0) /
                          static_cast<double>(diffs.size());
            if (diffs.size() >= 2) {
                s.mean_ci = stats::bca_interval(
                    diffs, [](std::span<const double> v) {
                        return std::accumulate(v.begin(), v.end(), 0.0) /
                               static_cast<double>(v.size());
                    },
                    in.bootstrap.B, in.bootstrap.seed);
            } else {
                s.mean_ci.point = s.mean_diff;
                s.mean_ci.ci_low = s.mean_ci.ci_high = s.mean_diff;
                s.mean_ci.degenerate = true;
            }
            s.p = stats::wilcoxon_signed_rank(diffs).p_value;
            std::vector<double> mirrored(diffs.size());
            std::transform(diffs.begin(), diffs.end(), mirrored.begin(),
                           [](double d) { return -d; });
            s.delta = stats::cliffs_delta(diffs, mirrored);
            result.verdicts.push_back(judge_h2(pairing.label, population, s, bound, th));
            result.details[std::string(pairing.label) + "_" + population + "_diffs"] = diffs;
        }
    }

    // ---- H3: in-degree at the snapshot, moles pooled from C2 and C4
    {
        std::vector<double> mole_pool;
        for (const auto c : {Condition::C2_BlindNaive, Condition::C4_BlindAdaptive}) {
            for (const auto& row : population_rows(c)) {
                const auto d = mole_indegree_at_snapshot(in.campaign_dir, row, in.roster, in.windows);
                if (d) mole_pool.push_back(static_cast<double>(*d));
            }
        }
        std::vector<double> nonmole_pool;
        for (const auto& row : population_rows(Condition::C5_BlindNoMole)) {
            const auto fired_map = load_fired_map(in.campaign_dir, row.run_id);
            std::vector<int> fired_by_snapshot;
            for (const auto& [id, tick] : fired_map) {
                if (tick <= in.windows.snapshot_tick) fired_by_snapshot.push_back(id);
            }
            const int agent = h3_nonmole_agent(row, in.roster, fired_by_snapshot);
            const auto snaps = load_run_snapshots(in.campaign_dir, row.run_id);
            const auto* snap = find_snapshot(snaps, in.windows.snapshot_tick);
            if (snap) nonmole_pool.push_back(static_cast<double>(snap->in_degree(agent)));
        }
        if (mole_pool.empty() || nonmole_pool.empty()) {
            HypothesisVerdict v;
            v.hypothesis = "H3";
            v.population = "NA";
            v.verdict = VerdictLabel::PENDING;
            v.note = "empty observation pools";
            result.verdicts.push_back(std::move(v));
        } else {
            H3Stats s;
            s.n_mole = static_cast<int>(mole_pool.size());
            s.n_nonmole = static_cast<int>(nonmole_pool.size());
            const auto mw = stats::mann_whitney_u(mole_pool, nonmole_pool);
            s.u = mw.statistic;
            s.p = mw.p_value;
            s.delta = stats::cliffs_delta(mole_pool, nonmole_pool);
            if (mole_pool.size() >= 2 && nonmole_pool.size() >= 2) {
                s.delta_ci = stats::bca_interval_two_sample(
                    mole_pool, nonmole_pool,
                    [](std::span<const double> a, std::span<const double> b) {
                        return stats::cliffs_delta(a, b);
                    },
                    in.bootstrap.B, in.bootstrap.seed);
            }
            result.verdicts.push_back(judge_h3(s, th));
            result.details["h3_mole_indegrees"] = mole_pool;
            result.details["h3_nonmole_indegrees"] = nonmole_pool;
        }
    }

    // ---- H4: exposure Gini vs the Enron reference
    {
        const auto c5_rows = population_rows(Condition::C5_BlindNoMole);
        if (c5_rows.empty()) {
            HypothesisVerdict v;
            v.hypothesis = "H4";
            v.population = "NA";
            v.verdict = VerdictLabel::PENDING;
            v.note = "no usable C5 runs";
            result.verdicts.push_back(std::move(v));
        } else if (!in.enron_path) {
            HypothesisVerdict v;
            v.hypothesis = "H4";
            v.population = "NA";
            v.verdict = VerdictLabel::PENDING;
            v.note = "Enron reference edge list not supplied";
            result.verdicts.push_back(std::move(v));
        } else {
            std::vector<std::vector<TickEvent>> runs;
            for (const auto& row : c5_rows) {
                runs.push_back(load_run_telemetry(in.campaign_dir, row.run_id));
            }
            const auto exposures = pair_exposures(runs, in.roster);
            const auto enron = snap_out_degrees(*in.enron_path);
            std::vector<double> degrees(enron.out_degrees.begin(), enron.out_degrees.end());

            H4Stats s;
            s.gini_hbee = stats::gini(exposures.values);
            s.gini_enron = stats::gini(degrees);
            s.saturation_fraction = exposures.saturation_fraction;
            s.n_pairs = static_cast<std::int64_t>(exposures.values.size());
            s.n_nodes = enron.node_count;
            auto verdict = judge_h4(s, th);
            // both all-pairs and positive-exposure Gini are reported
            std::vector<double> positive;
            for (double v : exposures.values) {
                if (v > 0.0) positive.push_back(v);
            }
            if (!positive.empty()) {
                verdict.stats["gini_hbee_positive_pairs"] = stats::gini(positive);
                verdict.stats["n_positive_pairs"] = positive.size();
            }
            result.details["hbee_exposures"] = exposures.values;
            result.details["enron_bottom80_share"] =
                stats::lorenz_share_at(stats::lorenz_points(degrees), 0.8);
            result.details["enron_degrees_gini"] = s.gini_enron;
            {
                // Lorenz points for figures; the Enron curve is thinned to
                // keep the report compact
                const auto hb = stats::lorenz_points(exposures.values);
                nlohmann::json arr = nlohmann::json::array();
                for (const auto& [x, y] : hb) arr.push_back({x, y});
                result.details["hbee_lorenz"] = arr;
                const auto en = stats::lorenz_points(degrees);
                nlohmann::json arr2 = nlohmann::json::array();
                const std::size_t step = std::max<std::size_t>(1, en.size() / 512);
                for (std::size_t i = 0; i < en.size(); i += step) {
                    arr2.push_back({en[i].first, en[i].second});
                }
                arr2.push_back({1.0, 1.0});
                result.details["enron_lorenz"] = arr2;
            }
            result.verdicts.push_back(std::move(verdict));
        }
    }

    // ---- H5: cross-backbone replication, pending unless supplied
    {
        if (!in.replication_manifest) {
            result.verdicts.push_back(
                judge_h5_pending("replication campaign not supplied; no LLM execution required"));
        } else {
            try {
                CampaignAnalysisInputs rep = in;
                rep.campaign_dir = *in.replication_manifest;
                rep.manifest = read_manifest_csv(
                    (fs::path(*in.replication_manifest) / "manifest.csv").string());
                rep.replication_manifest.reset();
                rep.ratings_path.reset();
                std::vector<double> ranks;
                for (const auto& row : rep.manifest) {
                    if (row.condition != Condition::C2_BlindNaive) continue;
                    if (!in_analysis_population(row, rep.windows)) continue;
                    const auto r = mole_preannounce_rank(rep.campaign_dir, row, rep.roster, rep.windows);
                    if (r) ranks.push_back(static_cast<double>(*r));
                }
                if (ranks.size() < 2) {
                    result.verdicts.push_back(judge_h5_pending("replication manifest has fewer than 2 usable C2 runs"));
                } else {
                    std::vector<double> reference(static_cast<std::size_t>(n_roster));
                    std::iota(reference.begin(), reference.end(), 1.0);
                    H1Stats s;
                    s.n = static_cast<int>(ranks.size());
                    s.median = median_of(ranks);
                    s.median_ci = stats::bca_interval(
                        ranks, [](std::span<const double> v) {
                            return median_of(std::vector<double>(v.begin(), v.end()));
                        },
                        in.bootstrap.B, in.bootstrap.seed);
                    s.delta = stats::cliffs_delta(ranks, reference);
                    s.p = stats::mann_whitney_u(ranks, reference).p_value;
                    result.verdicts.push_back(judge_h5(s, th));
                }
            } catch (const std::exception& e) {
                result.verdicts.push_back(judge_h5_pending(std::string("replication manifest unreadable: ") + e.what()));
            }
        }
    }

    return result;
}

} // namespace hbee
