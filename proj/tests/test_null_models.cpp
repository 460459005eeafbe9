#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <random>

#include "oracles.hpp"
#include "tempograph/metrics.hpp"
#include "tempograph/null_models.hpp"

using namespace tempograph;

namespace {

std::multiset<std::pair<UserId, UserId>> pair_multiset(const EventLog& log) {
    std::multiset<std::pair<UserId, UserId>> m;
    for (const auto& e : log.events()) m.insert({e.src, e.dst});
    return m;
}

std::vector<Timestamp> sorted_times(const EventLog& log) {
    std::vector<Timestamp> t;
    for (const auto& e : log.events()) t.push_back(e.ts);
    std::sort(t.begin(), t.end());
    return t;
}

std::map<UserId, std::pair<std::size_t, std::size_t>> degree_vectors(const WindowedGraph& g) {
    std::map<UserId, std::pair<std::size_t, std::size_t>> d;  // user -> (in, out)
    for (UserId u : g.nodes) d[u];
    for (const auto& e : g.edges) {
        ++d[e.src].second;
        ++d[e.dst].first;
    }
    return d;
}

WindowedGraph random_simple_graph(std::mt19937_64& rng, std::uint32_t max_nodes,
                                  std::size_t max_edges) {
    std::uniform_int_distribution<std::uint32_t> n_dist(2, max_nodes);
    std::uint32_t n = n_dist(rng);
    std::uniform_int_distribution<std::size_t> m_dist(1, max_edges);
    std::uniform_int_distribution<std::uint32_t> u_dist(0, n - 1);
    std::set<std::pair<UserId, UserId>> edges;
    std::set<UserId> nodes;
    for (std::size_t i = 0, m = m_dist(rng); i < m; ++i) {
        UserId a = u_dist(rng), b = u_dist(rng);
        if (a == b) continue;
        edges.insert({a, b});
        nodes.insert(a);
        nodes.insert(b);
    }
    if (edges.empty()) {
        edges.insert({0, 1});
        nodes.insert(0);
        nodes.insert(1);
    }
    WindowedGraph g;
    g.nodes.assign(nodes.begin(), nodes.end());
    for (auto [a, b] : edges) g.edges.push_back({a, b, 1});
    return g;
}

}  // namespace

TEST_CASE("shuffling a single-event log is the identity") {
    UserTable t;
    t.intern("A");
    t.intern("B");
    EventLog log({{0, 1, 42}}, std::move(t));
    auto shuffled = shuffle_timestamps(log, 99);
    CHECK(shuffled.events() == log.events());
}

TEST_CASE("shuffle conserves the aggregate graph and the time multiset") {
    std::mt19937_64 rng(17);
    auto log = oracles::make_random_log(rng, 1000, 40, 0, 100000, 0.02);
    for (RandomSeed seed = 1; seed <= 20; ++seed) {
        auto shuffled = shuffle_timestamps(log, seed);
        CHECK(shuffled.size() == log.size());
        CHECK(pair_multiset(shuffled) == pair_multiset(log));
        CHECK(sorted_times(shuffled) == sorted_times(log));
        // re-sorted output
        for (std::size_t i = 1; i < shuffled.size(); ++i)
            CHECK(shuffled.events()[i - 1].ts <= shuffled.events()[i].ts);
    }
}

TEST_CASE("shuffle is deterministic per seed and varies across seeds") {
    std::mt19937_64 rng(18);
    auto log = oracles::make_random_log(rng, 500, 20, 0, 50000);
    auto a = shuffle_timestamps(log, 7);
    auto b = shuffle_timestamps(log, 7);
    auto c = shuffle_timestamps(log, 8);
    CHECK(a.events() == b.events());
    CHECK(a.events() != c.events());
}

TEST_CASE("shuffled hourly windows differ from the original but hourly counts match") {
    std::mt19937_64 rng(19);
    auto log = oracles::make_random_log(rng, 10000, 200, 0, 86400);
    for (RandomSeed seed = 1; seed <= 10; ++seed) {
        auto shuffled = shuffle_timestamps(log, seed);
        std::map<Timestamp, std::size_t> orig_hist, shuf_hist;
        for (const auto& e : log.events()) ++orig_hist[e.ts / 3600];
        for (const auto& e : shuffled.events()) ++shuf_hist[e.ts / 3600];
        CHECK(orig_hist == shuf_hist);

        auto g0 = window_view(log, {43200, 7200});
        auto g1 = window_view(shuffled, {43200, 7200});
        CHECK(g0.edges != g1.edges);  // overwhelmingly likely for 10k events
    }
}

TEST_CASE("two-edge graph rewiring preserves degree sequences") {
    WindowedGraph g;
    g.nodes = {0, 1, 2, 3};
    g.edges = {{0, 1, 1}, {2, 3, 1}};
    auto r = degree_preserving_graph(g, 5);
    CHECK(r.nodes == g.nodes);
    CHECK(degree_vectors(r) == degree_vectors(g));
}

TEST_CASE("star graph survives rewiring unchanged") {
    WindowedGraph g;
    for (UserId u = 0; u < 8; ++u) g.nodes.push_back(u);
    for (UserId u = 1; u < 8; ++u) g.edges.push_back({u, 0, 1});
    auto r = degree_preserving_graph(g, 11);
    CHECK(r.edges == g.edges);  // no legal swap exists
}

TEST_CASE("graphs with fewer than two edges are returned unchanged") {
    WindowedGraph g;
    g.nodes = {0, 1};
    g.edges = {{0, 1, 3}};
    auto r = degree_preserving_graph(g, 1);
    REQUIRE(r.n_edges() == 1);
    CHECK(r.edges[0].weight == 1);  // weights reset in the randomized snapshot
}

TEST_CASE("rewiring preserves per-node degree vectors, no self-loops, no duplicates") {
    std::mt19937_64 rng(2025);
    for (int i = 0; i < 500; ++i) {
        auto g = random_simple_graph(rng, 30, 80);
        auto r = degree_preserving_graph(g, static_cast<RandomSeed>(i));
        CHECK(r.nodes == g.nodes);
        CHECK(degree_vectors(r) == degree_vectors(g));
        std::set<std::pair<UserId, UserId>> seen;
        for (const auto& e : r.edges) {
            CHECK(e.src != e.dst);
            CHECK(seen.insert({e.src, e.dst}).second);
        }
    }
}

TEST_CASE("rewiring is deterministic given the seed") {
    std::mt19937_64 rng(8);
    auto g = random_simple_graph(rng, 40, 120);
    auto a = degree_preserving_graph(g, 1234);
    auto b = degree_preserving_graph(g, 1234);
    CHECK(a.edges == b.edges);
}

TEST_CASE("rewiring actually moves edges on non-degenerate graphs") {
    std::mt19937_64 rng(9);
    std::set<std::pair<UserId, UserId>> edges;
    std::uniform_int_distribution<UserId> u(0, 49);
    while (edges.size() < 150) {
        UserId a = u(rng), b = u(rng);
        if (a != b) edges.insert({a, b});
    }
    WindowedGraph g;
    std::set<UserId> nodes;
    for (auto [a, b] : edges) {
        nodes.insert(a);
        nodes.insert(b);
    }
    g.nodes.assign(nodes.begin(), nodes.end());
    for (auto [a, b] : edges) g.edges.push_back({a, b, 1});
    auto r = degree_preserving_graph(g, 77);
    CHECK(r.edges != g.edges);
}
