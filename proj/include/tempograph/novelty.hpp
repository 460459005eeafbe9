#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "tempograph/event_log.hpp"
#include "tempograph/window.hpp"

namespace tempograph {

/// Earliest-occurrence timestamps per user and per ordered user pair.
/// Built once from the full log and shared read-only across windows.
struct FirstSeenTables {
    static constexpr Timestamp kNeverSeen = kTimestampMax;

    std::vector<Timestamp> node_first;  // indexed by UserId; kNeverSeen if absent
    std::unordered_map<std::uint64_t, Timestamp> edge_first;

    Timestamp node(UserId u) const {
        return u < node_first.size() ? node_first[u] : kNeverSeen;
    }
    Timestamp edge(UserId u, UserId v) const {
        auto it = edge_first.find(pair_key(u, v));
        return it == edge_first.end() ? kNeverSeen : it->second;
    }
};

/// Single pass over the sorted log. Self-replies count for node_first (the
/// user was active) and get their own (u,u) entry in edge_first.
FirstSeenTables build_first_seen(const EventLog& log);

struct NoveltyFractions {
    double new_node_prop = 0.0;  // nodes never active before the window's left edge
    double new_edge_prop = 0.0;  // ordered pairs never seen before the left edge
};

/// Proportion of window nodes/edges whose first-ever appearance is after
/// t - tau/2. The graph must come from the same log as the tables; a node
/// or edge missing from the tables throws (provenance mismatch).
NoveltyFractions novelty_fractions(const WindowedGraph& g, const FirstSeenTables& tables);

struct SeriesPoint {
    Timestamp t;
    double value;
};

struct SpikeOptions {
    double z_threshold = 3.0;
    std::size_t rolling_window = 29;  // centered; must be odd
};

/// Local maxima exceeding rolling-median + z * rolling-MAD. Series shorter
/// than the rolling window fall back to the global median/MAD.
std::vector<SeriesPoint> spike_detect(const std::vector<SeriesPoint>& series,
                                      const SpikeOptions& opts = {});

}  // namespace tempograph
