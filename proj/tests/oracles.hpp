// Test-only brute-force oracles. Deliberately written with different data
// structures and algorithms than the library so they stay independent of
// the implementation paths they check.

#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "tempograph/event_log.hpp"
#include "tempograph/window.hpp"

namespace oracles {

using namespace tempograph;

inline EventLog make_random_log(std::mt19937_64& rng, std::size_t n_events,
                                std::uint32_t n_users, Timestamp ts_lo, Timestamp ts_hi,
                                double self_loop_prob = 0.0) {
    std::uniform_int_distribution<std::uint32_t> user(0, n_users - 1);
    std::uniform_int_distribution<Timestamp> ts(ts_lo, ts_hi);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    UserTable table;
    for (std::uint32_t i = 0; i < n_users; ++i) table.intern("u" + std::to_string(i));
    std::vector<Interaction> events;
    for (std::size_t i = 0; i < n_events; ++i) {
        UserId s = user(rng);
        UserId d = coin(rng) < self_loop_prob ? s : user(rng);
        events.push_back({s, d, ts(rng)});
    }
    return EventLog(std::move(events), std::move(table));
}

/// Filter-then-dedup window construction using ordered containers.
inline WindowedGraph brute_force_window(const EventLog& log, WindowSpec spec,
                                        bool include_self_loops = false) {
    std::map<std::pair<UserId, UserId>, std::uint32_t> weights;
    std::set<UserId> nodes;
    for (const auto& e : log.events()) {
        if (e.ts <= spec.lo() || e.ts > spec.hi()) continue;
        if (e.src == e.dst && !include_self_loops) continue;
        ++weights[{e.src, e.dst}];
        nodes.insert(e.src);
        nodes.insert(e.dst);
    }
    WindowedGraph g;
    g.spec = spec;
    g.nodes.assign(nodes.begin(), nodes.end());
    for (const auto& [p, w] : weights) g.edges.push_back({p.first, p.second, w});
    return g;
}

/// Weak connectivity by breadth-first search over adjacency sets.
inline std::vector<std::vector<UserId>> bfs_components(const WindowedGraph& g) {
    std::map<UserId, std::set<UserId>> adj;
    for (UserId u : g.nodes) adj[u];
    for (const auto& e : g.edges) {
        adj[e.src].insert(e.dst);
        adj[e.dst].insert(e.src);
    }
    std::set<UserId> unvisited(g.nodes.begin(), g.nodes.end());
    std::vector<std::vector<UserId>> comps;
    while (!unvisited.empty()) {
        UserId start = *unvisited.begin();
        std::deque<UserId> queue{start};
        unvisited.erase(start);
        std::vector<UserId> comp;
        while (!queue.empty()) {
            UserId u = queue.front();
            queue.pop_front();
            comp.push_back(u);
            for (UserId v : adj[u]) {
                if (unvisited.erase(v)) queue.push_back(v);
            }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    std::sort(comps.begin(), comps.end());
    return comps;
}

/// Per-window novelty by scanning the full event history.
inline std::pair<double, double> brute_force_novelty(const EventLog& log,
                                                     const WindowedGraph& g) {
    if (g.empty()) return {0.0, 0.0};
    const Timestamp left = g.spec.lo();
    auto seen_node_before = [&](UserId u) {
        for (const auto& e : log.events())
            if (e.ts <= left && (e.src == u || e.dst == u)) return true;
        return false;
    };
    auto seen_edge_before = [&](UserId u, UserId v) {
        for (const auto& e : log.events())
            if (e.ts <= left && e.src == u && e.dst == v) return true;
        return false;
    };
    std::size_t new_nodes = 0, new_edges = 0;
    for (UserId u : g.nodes)
        if (!seen_node_before(u)) ++new_nodes;
    for (const auto& e : g.edges)
        if (!seen_edge_before(e.src, e.dst)) ++new_edges;
    return {static_cast<double>(new_nodes) / g.n_nodes(),
            g.n_edges() ? static_cast<double>(new_edges) / g.n_edges() : 0.0};
}

}  // namespace oracles
