#pragma once

#include <cstdint>

#include "tempograph/event_log.hpp"
#include "tempograph/window.hpp"

namespace tempograph {

using RandomSeed = std::uint64_t;

/// Shuffled-timestamps reference model: permutes the timestamps of all
/// interactions uniformly at random while keeping the (src, dst) pairs
/// fixed, then re-sorts. The all-time aggregate graph and the multiset of
/// interaction times are conserved; temporal correlations are destroyed.
EventLog shuffle_timestamps(const EventLog& log, RandomSeed seed);

struct RewireOptions {
    /// Accepted double-edge swaps per edge before the chain stops.
    double swaps_per_edge = 10.0;
    /// Attempt budget per edge; degenerate graphs (e.g. stars) have few or
    /// no legal swaps and would otherwise never reach the accept target.
    double max_attempts_per_edge = 200.0;
};

/// Restrained-randomisation reference model: degree-preserving rewiring of
/// one deduplicated snapshot via iterated double-edge swaps. Two random
/// edges (a,b),(c,d) become (a,d),(c,b) unless that creates a self-loop or
/// duplicate edge. Node set and per-node in/out degrees are preserved
/// exactly; weights in the randomized snapshot are set to 1.
WindowedGraph degree_preserving_graph(const WindowedGraph& g, RandomSeed seed,
                                      const RewireOptions& opts = {});

}  // namespace tempograph
