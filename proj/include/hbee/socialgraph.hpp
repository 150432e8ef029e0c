#pragma once

#include "hbee/rng.hpp"

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace hbee {

// Directed weighted suspicion edges plus undirected rapport edges.
// Weights only ever grow; no decay is modeled.
struct SuspicionGraph {
    std::map<std::pair<int, int>, double> suspicion; // (observer, target) -> weight > 0
    std::map<std::pair<int, int>, double> rapport;   // normalized key a < b

    void apply_flag(int observer, int target, double weight_delta);
    void add_rapport(int a, int b, double weight_delta);

    double weight(int observer, int target) const;
    // Distinct observers with positive weight toward the target.
    int in_degree(int target) const;
    std::vector<int> in_degrees(int roster_size) const;
};

struct CascadeParams {
    int k = 2;               // distinct peer flaggers required
    double p_cascade = 0.3;  // adoption probability per supported target
};

// Cascade defender rule: the observer scans its visible peers' suspicion
// edges in `support`; every target flagged by at least k distinct peers
// is adopted with probability p_cascade at weight 1.0. `support` must be
// the graph state read at tick start. Blind mode never calls this.
void cascade_update(SuspicionGraph& graph, const SuspicionGraph& support, int observer,
                    std::span<const int> visible_peers, Rng& rng, const CascadeParams& params);

// One snapshot of nonzero edges at a tick.
struct EdgeSnapshot {
    int tick = 0;
    std::vector<std::tuple<int, int, double>> edges; // observer, target, weight (sorted)

    int in_degree(int target) const;
    std::vector<int> in_degrees(int roster_size) const;
    double incoming_weight(int target) const;
};

EdgeSnapshot snapshot_of(const SuspicionGraph& graph, int tick);
EdgeSnapshot rapport_snapshot_of(const SuspicionGraph& graph, int tick);

// CSV with header tick,observer,target,weight; multiple ticks per file.
void write_snapshots_csv(const std::string& path, const std::vector<EdgeSnapshot>& snapshots);
std::vector<EdgeSnapshot> read_snapshots_csv(const std::string& path);
const EdgeSnapshot* find_snapshot(const std::vector<EdgeSnapshot>& snapshots, int tick);

struct UebaRanking {
    int window_lo = 0;
    int window_hi = 0;
    std::vector<double> scores; // per agent_id
    std::vector<int> ranks;     // per agent_id, 1 = most suspicious
};

// Score = incoming flag weight accumulated inside the window, computed as
// the difference between the window-end snapshot and the snapshot taken
// just before the window opens (null for a window starting at tick 1).
// Cascade-adopted flags are part of the cascade-mode graph, so no mode
// switch is needed here. Ranks descend by score; ties break by ascending
// agent_id.
UebaRanking ueba_ranking(const EdgeSnapshot& window_end, const EdgeSnapshot* before_window,
                         int roster_size, int window_lo, int window_hi);

} // namespace hbee
