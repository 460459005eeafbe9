#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "tempograph/event_log.hpp"
#include "tempograph/window.hpp"

namespace tempograph {

struct BasicCounts {
    std::size_t n_nodes = 0;
    std::size_t n_edges = 0;
    double avg_degree = 0.0;  // n_edges / n_nodes over deduplicated edges
};

BasicCounts basic_counts(const WindowedGraph& g);

/// Maximal weakly connected node sets (direction ignored), via union-find
/// over the edge list. Each component's node list is ascending; components
/// are ordered by their smallest node.
std::vector<std::vector<UserId>> components(const WindowedGraph& g);

struct ComponentBreakdown {
    std::size_t n_nodes = 0;
    std::size_t lcc_size = 0;
    double lcc_prop = 0.0;   // fraction of nodes in the largest component
    double pair_prop = 0.0;  // fraction in components of exactly 2 nodes
    double mid_prop = 0.0;   // fraction in components of size >= 3 other than the LCC
    std::size_t n_components = 0;
};

ComponentBreakdown component_breakdown(const WindowedGraph& g);

/// Breakdown from a precomputed list of component sizes (n_nodes = sum).
ComponentBreakdown breakdown_from_sizes(const std::vector<std::size_t>& sizes);

struct RankedUser {
    UserId user;
    std::size_t indegree;  // distinct in-neighbors inside the window
    double normalized;     // indegree / n_nodes of the window
};

/// The k users with the most distinct in-neighbors, descending; ties break
/// by ascending UserId. Fewer than k users present -> all returned.
std::vector<RankedUser> top_k_indegree(const WindowedGraph& g, std::size_t k);

/// value -> count, ordered by value for stable CSV output.
using Histogram = std::map<std::uint64_t, std::uint64_t>;

struct AggregateDistributions {
    Histogram node_degree;         // distinct partners, in/out union
    Histogram node_in_degree;      // distinct in-neighbors
    Histogram node_out_degree;     // distinct out-neighbors
    Histogram interaction_degree;  // total interactions the user participates in
    Histogram edge_weight;         // interactions per ordered interacting pair
};

/// All-time aggregate-graph distributions. Self-replies are excluded,
/// matching the windowed edge definition.
AggregateDistributions aggregate_distributions(const EventLog& log);

/// Top-k users by distinct in-neighbors in the all-time aggregate graph.
std::vector<UserId> aggregate_top_indegree(const EventLog& log, std::size_t k);

}  // namespace tempograph
