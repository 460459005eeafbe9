#include "tempograph/window.hpp"

#include <algorithm>
#include <stdexcept>

namespace tempograph {

namespace {

WindowedGraph from_maps(WindowSpec spec,
                        const std::unordered_map<std::uint64_t, std::uint32_t>& edge_mult,
                        const std::unordered_map<UserId, std::uint32_t>& node_mult) {
    WindowedGraph g;
    g.spec = spec;
    g.nodes.reserve(node_mult.size());
    for (const auto& [u, _] : node_mult) g.nodes.push_back(u);
    std::sort(g.nodes.begin(), g.nodes.end());
    g.edges.reserve(edge_mult.size());
    for (const auto& [key, w] : edge_mult) g.edges.push_back({pair_src(key), pair_dst(key), w});
    std::sort(g.edges.begin(), g.edges.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
        return a.src != b.src ? a.src < b.src : a.dst < b.dst;
    });
    return g;
}

}  // namespace

WindowedGraph window_view(const EventLog& log, WindowSpec spec, bool include_self_loops) {
    if (spec.tau <= 0) throw std::invalid_argument("window tau must be positive");
    std::unordered_map<std::uint64_t, std::uint32_t> edge_mult;
    std::unordered_map<UserId, std::uint32_t> node_mult;
    for (const auto& e : log.slice(spec.lo(), spec.hi())) {
        if (e.src == e.dst && !include_self_loops) continue;
        ++edge_mult[pair_key(e.src, e.dst)];
        ++node_mult[e.src];
        ++node_mult[e.dst];
    }
    return from_maps(spec, edge_mult, node_mult);
}

SlidingSchedule default_schedule(const EventLog& log, std::int64_t tau, std::int64_t delta) {
    if (tau <= 0 || delta <= 0) throw std::invalid_argument("tau and delta must be positive");
    if (log.empty()) return {tau, delta, 0, -1};
    Timestamp t0 = log.min_ts();
    Timestamp t1 = log.max_ts();
    Timestamp first = t0;
    if (delta % 86400 == 0) {
        // calendar-align centers to midnight UTC
        first = (t0 / 86400) * 86400;
        if (first < t0 && t0 % 86400 != 0) first += 86400;
        if (t0 < 0 && t0 % 86400 != 0) first = (t0 / 86400) * 86400;  // floor for negatives
    }
    Timestamp last = first;
    while (last + delta <= t1) last += delta;
    return {tau, delta, first, last};
}

SlidingWindowCursor::SlidingWindowCursor(const EventLog& log, const SlidingSchedule& sched,
                                         bool include_self_loops)
    : log_(log), sched_(sched), include_self_loops_(include_self_loops) {
    if (sched.tau <= 0 || sched.delta <= 0)
        throw std::invalid_argument("schedule tau and delta must be positive");
}

void SlidingWindowCursor::enter(const Interaction& e) {
    if (e.src == e.dst && !include_self_loops_) return;
    ++edge_mult_[pair_key(e.src, e.dst)];
    ++node_mult_[e.src];
    ++node_mult_[e.dst];
}

void SlidingWindowCursor::exit(const Interaction& e) {
    if (e.src == e.dst && !include_self_loops_) return;
    auto ei = edge_mult_.find(pair_key(e.src, e.dst));
    if (--ei->second == 0) edge_mult_.erase(ei);
    auto drop = [this](UserId u) {
        auto ni = node_mult_.find(u);
        if (--ni->second == 0) node_mult_.erase(ni);
    };
    drop(e.src);
    drop(e.dst);
}

void SlidingWindowCursor::seek(std::size_t i) {
    if (i >= sched_.n_windows()) throw std::out_of_range("window index out of range");
    if (primed_ && i < index_) throw std::logic_error("cursor cannot seek backwards");
    WindowSpec spec{sched_.center(i), sched_.tau};
    if (!primed_) {
        tail_ = log_.first_after(spec.lo());
        head_ = tail_;
        primed_ = true;
    }
    const auto& ev = log_.events();
    // evict events that fell off the left edge
    while (tail_ < ev.size() && ev[tail_].ts <= spec.lo()) {
        if (tail_ >= head_) {
            ++tail_;  // never entered; skip
            head_ = tail_;
        } else {
            exit(ev[tail_++]);
        }
    }
    if (head_ < tail_) head_ = tail_;
    // admit events up to the right edge
    while (head_ < ev.size() && ev[head_].ts <= spec.hi()) enter(ev[head_++]);
    index_ = i;
}

WindowedGraph SlidingWindowCursor::snapshot() const {
    return from_maps(spec(), edge_mult_, node_mult_);
}

std::vector<WindowedGraph> sliding_windows(const EventLog& log, const SlidingSchedule& sched,
                                           bool include_self_loops) {
    std::vector<WindowedGraph> out;
    out.reserve(sched.n_windows());
    SlidingWindowCursor cur(log, sched, include_self_loops);
    for (std::size_t i = 0; i < sched.n_windows(); ++i) {
        cur.seek(i);
        out.push_back(cur.snapshot());
    }
    return out;
}

}  // namespace tempograph
