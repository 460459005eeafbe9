#include "tempograph/null_models.hpp"

#include <algorithm>
#include <random>
#include <unordered_set>

namespace tempograph {

EventLog shuffle_timestamps(const EventLog& log, RandomSeed seed) {
    std::vector<Timestamp> times;
    times.reserve(log.size());
    for (const auto& e : log.events()) times.push_back(e.ts);

    std::mt19937_64 rng(seed);
    std::shuffle(times.begin(), times.end(), rng);

    std::vector<Interaction> events;
    events.reserve(log.size());
    for (std::size_t i = 0; i < log.size(); ++i) {
        const auto& e = log.events()[i];
        events.push_back({e.src, e.dst, times[i]});
    }
    return EventLog(std::move(events), log.users());
}

WindowedGraph degree_preserving_graph(const WindowedGraph& g, RandomSeed seed,
                                      const RewireOptions& opts) {
    WindowedGraph out = g;
    for (auto& e : out.edges) e.weight = 1;
    if (out.edges.size() < 2) return out;

    std::unordered_set<std::uint64_t> present;
    present.reserve(out.edges.size() * 2);
    for (const auto& e : out.edges) present.insert(pair_key(e.src, e.dst));

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, out.edges.size() - 1);

    const auto target = static_cast<std::uint64_t>(opts.swaps_per_edge * out.edges.size());
    const auto budget = static_cast<std::uint64_t>(opts.max_attempts_per_edge * out.edges.size());
    std::uint64_t accepted = 0;
    for (std::uint64_t attempt = 0; accepted < target && attempt < budget; ++attempt) {
        std::size_t i = pick(rng), j = pick(rng);
        if (i == j) continue;
        auto& e1 = out.edges[i];
        auto& e2 = out.edges[j];
        // rewire (a,b),(c,d) -> (a,d),(c,b)
        if (e1.src == e2.dst || e2.src == e1.dst) continue;  // would create self-loops
        std::uint64_t k1 = pair_key(e1.src, e2.dst);
        std::uint64_t k2 = pair_key(e2.src, e1.dst);
        if (present.count(k1) || present.count(k2)) continue;  // would duplicate
        present.erase(pair_key(e1.src, e1.dst));
        present.erase(pair_key(e2.src, e2.dst));
        present.insert(k1);
        present.insert(k2);
        std::swap(e1.dst, e2.dst);
        ++accepted;
    }

    std::sort(out.edges.begin(), out.edges.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
        return a.src != b.src ? a.src < b.src : a.dst < b.dst;
    });
    return out;
}

}  // namespace tempograph
