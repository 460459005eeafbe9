#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "tempograph/novelty.hpp"
#include "tempograph/window.hpp"

using namespace tempograph;

TEST_CASE("first-seen tables by hand") {
    UserTable t;
    t.intern("A");
    t.intern("B");
    EventLog log({{0, 1, 1}, {1, 0, 5}}, std::move(t));
    auto tables = build_first_seen(log);
    CHECK(tables.node(0) == 1);
    CHECK(tables.node(1) == 1);
    CHECK(tables.edge(0, 1) == 1);
    CHECK(tables.edge(1, 0) == 5);
    // edge firsts can never precede either endpoint's node first
    CHECK(tables.edge(0, 1) >= tables.node(0));
    CHECK(tables.edge(1, 0) >= tables.node(1));
}

TEST_CASE("empty log gives empty tables") {
    auto tables = build_first_seen(EventLog{});
    CHECK(tables.node_first.empty());
    CHECK(tables.edge_first.empty());
}

TEST_CASE("first-seen matches a brute-force min-scan") {
    std::mt19937_64 rng(404);
    auto log = oracles::make_random_log(rng, 600, 30, 0, 3000, 0.05);
    auto tables = build_first_seen(log);
    for (UserId u = 0; u < 30; ++u) {
        Timestamp expect = FirstSeenTables::kNeverSeen;
        for (const auto& e : log.events())
            if (e.src == u || e.dst == u) expect = std::min(expect, e.ts);
        CHECK(tables.node(u) == expect);
    }
    for (const auto& [key, first] : tables.edge_first) {
        Timestamp expect = FirstSeenTables::kNeverSeen;
        for (const auto& e : log.events())
            if (pair_key(e.src, e.dst) == key) expect = std::min(expect, e.ts);
        CHECK(first == expect);
    }
}

TEST_CASE("the window holding the first event is entirely new") {
    std::mt19937_64 rng(3);
    auto log = oracles::make_random_log(rng, 200, 15, 1000, 2000);
    auto tables = build_first_seen(log);
    // (min_ts - 1, min_ts + 99]: covers the earliest event, so every node
    // and edge present first appeared after the window's left edge
    auto g = window_view(log, {log.min_ts() + 49, 100});
    REQUIRE(!g.empty());
    auto f = novelty_fractions(g, tables);
    CHECK(f.new_node_prop == 1.0);
    CHECK(f.new_edge_prop == 1.0);
}

TEST_CASE("a window of only previously-seen pairs scores zero") {
    UserTable t;
    t.intern("A");
    t.intern("B");
    EventLog log({{0, 1, 10}, {0, 1, 100}, {1, 0, 20}, {1, 0, 110}}, std::move(t));
    auto tables = build_first_seen(log);
    auto g = window_view(log, {105, 20});  // (95, 115]: repeats only
    REQUIRE(g.n_edges() == 2);
    auto f = novelty_fractions(g, tables);
    CHECK(f.new_node_prop == 0.0);
    CHECK(f.new_edge_prop == 0.0);
}

TEST_CASE("mismatched provenance is a hard error") {
    UserTable t1;
    t1.intern("A");
    t1.intern("B");
    EventLog log({{0, 1, 10}}, std::move(t1));
    auto tables = build_first_seen(log);

    UserTable t2;
    for (int i = 0; i < 5; ++i) t2.intern("x" + std::to_string(i));
    EventLog other({{3, 4, 10}}, std::move(t2));
    auto g = window_view(other, {10, 10});
    CHECK_THROWS_AS(novelty_fractions(g, tables), std::runtime_error);
}

TEST_CASE("novelty matches a brute-force history scan on random windows") {
    std::mt19937_64 rng(909);
    for (int trial = 0; trial < 10; ++trial) {
        auto log = oracles::make_random_log(rng, 400, 20, 0, 4000);
        auto tables = build_first_seen(log);
        std::uniform_int_distribution<Timestamp> center(0, 4000);
        std::uniform_int_distribution<std::int64_t> tau(1, 800);
        for (int i = 0; i < 20; ++i) {
            auto g = window_view(log, {center(rng), tau(rng)});
            if (g.empty()) continue;
            auto got = novelty_fractions(g, tables);
            auto [en, ee] = oracles::brute_force_novelty(log, g);
            CHECK(got.new_node_prop == doctest::Approx(en).epsilon(1e-12));
            CHECK(got.new_edge_prop == doctest::Approx(ee).epsilon(1e-12));
        }
    }
}

TEST_CASE("monotone forgetting across window sizes") {
    // the narrower window remembers less history, so a node that is new for
    // (t,tau1) is present in and new for (t,tau2) with tau2 > tau1 as well
    std::mt19937_64 rng(111);
    for (int trial = 0; trial < 50; ++trial) {
        auto log = oracles::make_random_log(rng, 300, 15, 0, 2000);
        auto tables = build_first_seen(log);
        std::uniform_int_distribution<Timestamp> center(0, 2000);
        Timestamp t = center(rng);
        std::int64_t tau1 = 100, tau2 = 500;
        auto g1 = window_view(log, {t, tau1});
        auto g2 = window_view(log, {t, tau2});
        for (UserId u : g1.nodes) {
            if (tables.node(u) <= g1.spec.lo()) continue;  // not new for tau1
            CHECK(std::binary_search(g2.nodes.begin(), g2.nodes.end(), u));
            CHECK(tables.node(u) > g2.spec.lo());
        }
    }
}

TEST_CASE("flat series with one outlier flags exactly that point") {
    std::vector<SeriesPoint> s;
    for (int i = 0; i < 100; ++i) s.push_back({i, 1.0});
    s[40].value = 10.0;
    auto peaks = spike_detect(s, {3.0, 29});
    REQUIRE(peaks.size() == 1);
    CHECK(peaks[0].t == 40);
}

TEST_CASE("monotone series has no peaks") {
    std::vector<SeriesPoint> s;
    for (int i = 0; i < 50; ++i) s.push_back({i, static_cast<double>(i)});
    CHECK(spike_detect(s).empty());
}

TEST_CASE("short series fall back to global statistics") {
    std::vector<SeriesPoint> s;
    for (int i = 0; i < 10; ++i) s.push_back({i, 2.0});
    s[5].value = 50.0;
    auto peaks = spike_detect(s, {3.0, 29});
    REQUIRE(peaks.size() == 1);
    CHECK(peaks[0].t == 5);
}

TEST_CASE("five injected spikes on a noisy diurnal baseline: all found, no extras") {
    // slow daily swing plus point-to-point chatter; the chatter keeps the
    // rolling MAD well above the baseline's own local maxima
    std::mt19937_64 rng(1234);
    std::normal_distribution<double> noise(0.0, 0.002);
    std::vector<SeriesPoint> s;
    for (int i = 0; i < 500; ++i) {
        double base = 0.3 + 0.05 * std::sin(i / 96.0 * 2 * 3.141592653589793);
        double chatter = i % 2 == 0 ? 0.03 : -0.03;
        s.push_back({i, base + chatter + noise(rng)});
    }
    std::vector<Timestamp> spikes{60, 140, 260, 333, 470};
    for (Timestamp t : spikes) s[static_cast<std::size_t>(t)].value += 0.6;

    auto peaks = spike_detect(s, {3.0, 29});
    REQUIRE(peaks.size() == 5);
    for (std::size_t i = 0; i < 5; ++i) CHECK(peaks[i].t == spikes[i]);
}

TEST_CASE("spike detection input validation") {
    CHECK_THROWS_AS(spike_detect({}), std::invalid_argument);
    CHECK_THROWS_AS(spike_detect({{0, 1.0}}, {-1.0, 29}), std::invalid_argument);
}
