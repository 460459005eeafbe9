#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "tempograph/event_log.hpp"
#include "tempograph/novelty.hpp"
#include "tempograph/window.hpp"

namespace tempograph {

/// One output record per window center.
struct WindowMetricsRow {
    Timestamp t = 0;
    std::size_t n_nodes = 0;
    std::size_t n_edges = 0;
    double avg_degree = 0.0;
    double new_node_prop = 0.0;
    double new_edge_prop = 0.0;
    double lcc_prop = 0.0;
    double pair_prop = 0.0;
    double mid_prop = 0.0;
    std::size_t n_components = 0;
};

struct SweepOptions {
    bool include_self_loops = false;
    bool counts = true;
    bool novelty = true;
    bool components = true;
    int threads = 0;  // <= 0: all available
};

/// Optimized sweep: window centers are chunked across OpenMP workers, each
/// worker slides its own incremental kernel. Counts and novelty are
/// maintained as events enter and leave the window (a node or pair is new
/// exactly while its first-ever event is inside the window); components run
/// per window over reusable epoch-stamped arrays. Rows come back ordered by
/// t regardless of completion order.
std::vector<WindowMetricsRow> sweep_metrics(const EventLog& log, const SlidingSchedule& sched,
                                            const FirstSeenTables& tables,
                                            const SweepOptions& opts = {});

/// Serial reference: rebuilds every window from scratch with a full scan of
/// the event log (the obviously-correct brute-force construction). Kept for
/// testing and as the benchmark baseline.
std::vector<WindowMetricsRow> sweep_metrics_naive(const EventLog& log,
                                                  const SlidingSchedule& sched,
                                                  const FirstSeenTables& tables,
                                                  const SweepOptions& opts = {});

/// Metrics for one materialized window, same row layout as the sweeps.
WindowMetricsRow window_metrics(const WindowedGraph& g, Timestamp t,
                                const FirstSeenTables& tables, const SweepOptions& opts = {});

/// CSV with header t,n_nodes,n_edges,avg_degree,new_node_prop,
/// new_edge_prop,lcc_prop,pair_prop,mid_prop,n_components.
void write_metrics_csv(const std::vector<WindowMetricsRow>& rows, std::ostream& out);
void write_metrics_csv_file(const std::vector<WindowMetricsRow>& rows, const std::string& path);

/// Deterministic float formatting shared by all CSV writers.
std::string format_double(double v);

}  // namespace tempograph
