#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "tempograph/event_log.hpp"
#include "tempograph/types.hpp"

namespace tempograph {

/// Window centered at t with length tau, covering (t - tau/2, t + tau/2].
/// For odd tau the left bound is floored so the width is exactly tau.
struct WindowSpec {
    Timestamp t;
    std::int64_t tau;  // seconds, > 0

    Timestamp lo() const { return t - tau / 2; }            // exclusive
    Timestamp hi() const { return t - tau / 2 + tau; }      // inclusive
};

struct WeightedEdge {
    UserId src;
    UserId dst;
    std::uint32_t weight;  // interaction multiplicity inside the window

    bool operator==(const WeightedEdge&) const = default;
};

/// Deduplicated directed graph induced by the interactions inside one
/// window. Nodes and edges are sorted, so equal graphs compare equal.
struct WindowedGraph {
    WindowSpec spec{0, 1};
    std::vector<UserId> nodes;        // ascending
    std::vector<WeightedEdge> edges;  // ascending (src, dst)

    std::size_t n_nodes() const { return nodes.size(); }
    std::size_t n_edges() const { return edges.size(); }
    bool empty() const { return nodes.empty(); }
};

/// Builds the windowed graph for one spec directly from the log's time
/// index. With include_self_loops off (default), src == dst interactions
/// contribute neither edges nor nodes.
WindowedGraph window_view(const EventLog& log, WindowSpec spec, bool include_self_loops = false);

struct SlidingSchedule {
    std::int64_t tau;    // window length, > 0
    std::int64_t delta;  // slide offset, > 0
    Timestamp t_first;
    Timestamp t_last;    // centers are t_first, t_first+delta, ... <= t_last

    std::size_t n_windows() const {
        if (t_last < t_first) return 0;
        return static_cast<std::size_t>((t_last - t_first) / delta) + 1;
    }
    Timestamp center(std::size_t i) const {
        return t_first + static_cast<Timestamp>(i) * delta;
    }
};

/// Default schedule covering the log: centers aligned to midnight UTC when
/// delta is a whole number of days, otherwise anchored at the first event.
SlidingSchedule default_schedule(const EventLog& log, std::int64_t tau, std::int64_t delta);

/// Incrementally maintained sliding window over a sorted log. Two cursors
/// advance over the events; per-pair and per-node multiplicity counters are
/// incremented on window entry and decremented on exit, so a full sweep
/// costs O(E_total + sum of per-window output) instead of rebuilding each
/// window from scratch.
class SlidingWindowCursor {
public:
    SlidingWindowCursor(const EventLog& log, const SlidingSchedule& sched,
                        bool include_self_loops = false);

    /// Positions the cursor on window index i. Indices must be visited in
    /// nondecreasing order.
    void seek(std::size_t i);

    std::size_t n_windows() const { return sched_.n_windows(); }
    Timestamp center() const { return sched_.center(index_); }
    WindowSpec spec() const { return {center(), sched_.tau}; }

    /// Interaction multiplicity per ordered in-window pair.
    const std::unordered_map<std::uint64_t, std::uint32_t>& edge_mult() const {
        return edge_mult_;
    }
    /// Number of in-window interactions touching each in-window node.
    const std::unordered_map<UserId, std::uint32_t>& node_mult() const { return node_mult_; }

    /// Materializes the current window as an immutable sorted snapshot.
    WindowedGraph snapshot() const;

private:
    void enter(const Interaction& e);
    void exit(const Interaction& e);

    const EventLog& log_;
    SlidingSchedule sched_;
    bool include_self_loops_;
    std::size_t index_ = 0;
    std::size_t head_ = 0;  // first event not yet entered
    std::size_t tail_ = 0;  // first event not yet exited
    bool primed_ = false;
    std::unordered_map<std::uint64_t, std::uint32_t> edge_mult_;
    std::unordered_map<UserId, std::uint32_t> node_mult_;
};

/// One materialized graph per scheduled center, element-wise identical to
/// calling window_view at each center.
std::vector<WindowedGraph> sliding_windows(const EventLog& log, const SlidingSchedule& sched,
                                           bool include_self_loops = false);

}  // namespace tempograph
