#include "hbee/socialgraph.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hbee {

void SuspicionGraph::apply_flag(int observer, int target, double weight_delta) {
    if (observer == target) throw std::invalid_argument("apply_flag: self-flag rejected");
    if (weight_delta < 0.0) throw std::invalid_argument("apply_flag: negative weight");
    if (weight_delta == 0.0) return;
    suspicion[{observer, target}] += weight_delta;
}

void SuspicionGraph::add_rapport(int a, int b, double weight_delta) {
    if (a == b) throw std::invalid_argument("add_rapport: self-edge rejected");
    if (weight_delta < 0.0) throw std::invalid_argument("add_rapport: negative weight");
    if (weight_delta == 0.0) return;
    if (a > b) std::swap(a, b);
    rapport[{a, b}] += weight_delta;
}

double SuspicionGraph::weight(int observer, int target) const {
    const auto it = suspicion.find({observer, target});
    return it == suspicion.end() ? 0.0 : it->second;
}

int SuspicionGraph::in_degree(int target) const {
    int count = 0;
    for (const auto& [key, w] : suspicion) {
        if (key.second == target && w > 0.0) ++count;
    }
    return count;
}

std::vector<int> SuspicionGraph::in_degrees(int roster_size) const {
    std::vector<int> out(static_cast<std::size_t>(roster_size), 0);
    for (const auto& [key, w] : suspicion) {
        if (w > 0.0 && key.second >= 0 && key.second < roster_size) {
            ++out[static_cast<std::size_t>(key.second)];
        }
    }
    return out;
}

void cascade_update(SuspicionGraph& graph, const SuspicionGraph& support, int observer,
                    std::span<const int> visible_peers, Rng& rng, const CascadeParams& params) {
    // distinct peer flaggers per target, observer's own edges excluded
    std::map<int, std::set<int>> flaggers;
    for (const int peer : visible_peers) {
        if (peer == observer) continue;
        for (const auto& [key, w] : support.suspicion) {
            if (key.first == peer && w > 0.0 && key.second != observer) {
                flaggers[key.second].insert(peer);
            }
        }
    }
    for (const auto& [target, peers] : flaggers) {
        if (static_cast<int>(peers.size()) < params.k) continue;
        if (rng.bernoulli(params.p_cascade)) {
            graph.apply_flag(observer, target, 1.0);
        }
    }
}

int EdgeSnapshot::in_degree(int target) const {
    int count = 0;
    for (const auto& [obs, tgt, w] : edges) {
        (void)obs;
        if (tgt == target && w > 0.0) ++count;
    }
    return count;
}

std::vector<int> EdgeSnapshot::in_degrees(int roster_size) const {
    std::vector<int> out(static_cast<std::size_t>(roster_size), 0);
    for (const auto& [obs, tgt, w] : edges) {
        (void)obs;
        if (w > 0.0 && tgt >= 0 && tgt < roster_size) ++out[static_cast<std::size_t>(tgt)];
    }
    return out;
}

double EdgeSnapshot::incoming_weight(int target) const {
    double total = 0.0;
    for (const auto& [obs, tgt, w] : edges) {
        (void)obs;
        if (tgt == target) total += w;
    }
    return total;
}

EdgeSnapshot snapshot_of(const SuspicionGraph& graph, int tick) {
    EdgeSnapshot snap;
    snap.tick = tick;
    snap.edges.reserve(graph.suspicion.size());
    for (const auto& [key, w] : graph.suspicion) {
        if (w > 0.0) snap.edges.emplace_back(key.first, key.second, w);
    }
    return snap; // map iteration order keeps edges sorted
}

EdgeSnapshot rapport_snapshot_of(const SuspicionGraph& graph, int tick) {
    EdgeSnapshot snap;
    snap.tick = tick;
    snap.edges.reserve(graph.rapport.size());
    for (const auto& [key, w] : graph.rapport) {
        if (w > 0.0) snap.edges.emplace_back(key.first, key.second, w);
    }
    return snap;
}

void write_snapshots_csv(const std::string& path, const std::vector<EdgeSnapshot>& snapshots) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_snapshots_csv: cannot open '" + path + "'");
    out << "tick,observer,target,weight\n";
    char buf[64];
    for (const auto& snap : snapshots) {
        for (const auto& [obs, tgt, w] : snap.edges) {
            std::snprintf(buf, sizeof(buf), "%.6f", w);
            out << snap.tick << ',' << obs << ',' << tgt << ',' << buf << '\n';
        }
    }
}

std::vector<EdgeSnapshot> read_snapshots_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_snapshots_csv: cannot open '" + path + "'");
    std::vector<EdgeSnapshot> out;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (header) { header = false; continue; }
        std::stringstream ss(line);
        std::string field;
        int vals[3];
        for (int i = 0; i < 3; ++i) {
            if (!std::getline(ss, field, ',')) throw std::runtime_error("read_snapshots_csv: bad row");
            vals[i] = std::stoi(field);
        }
        if (!std::getline(ss, field, ',')) throw std::runtime_error("read_snapshots_csv: bad row");
        const double w = std::stod(field);
        if (out.empty() || out.back().tick != vals[0]) {
            out.emplace_back();
            out.back().tick = vals[0];
        }
        out.back().edges.emplace_back(vals[1], vals[2], w);
    }
    return out;
}

const EdgeSnapshot* find_snapshot(const std::vector<EdgeSnapshot>& snapshots, int tick) {
    for (const auto& s : snapshots) {
        if (s.tick == tick) return &s;
    }
    return nullptr;
}

UebaRanking ueba_ranking(const EdgeSnapshot& window_end, const EdgeSnapshot* before_window,
                         int roster_size, int window_lo, int window_hi) {
    if (window_hi < window_lo) throw std::invalid_argument("ueba_ranking: empty window");

    UebaRanking r;
    r.window_lo = window_lo;
    r.window_hi = window_hi;
    r.scores.assign(static_cast<std::size_t>(roster_size), 0.0);

    for (const auto& [obs, tgt, w] : window_end.edges) {
        (void)obs;
        if (tgt >= 0 && tgt < roster_size) r.scores[static_cast<std::size_t>(tgt)] += w;
    }
    if (before_window != nullptr) {
        for (const auto& [obs, tgt, w] : before_window->edges) {
            (void)obs;
            if (tgt >= 0 && tgt < roster_size) r.scores[static_cast<std::size_t>(tgt)] -= w;
        }
    }

    std::vector<int> order(static_cast<std::size_t>(roster_size));
    for (int i = 0; i < roster_size; ++i) order[static_cast<std::size_t>(i)] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const double sa = r.scores[static_cast<std::size_t>(a)];
        const double sb = r.scores[static_cast<std::size_t>(b)];
        if (sa != sb) return sa > sb;
        return a < b;
    });

    r.ranks.assign(static_cast<std::size_t>(roster_size), 0);
    for (int pos = 0; pos < roster_size; ++pos) {
        r.ranks[static_cast<std::size_t>(order[static_cast<std::size_t>(pos)])] = pos + 1;
    }
    return r;
}

} // namespace hbee
