#include "tempograph/novelty.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tempograph {

FirstSeenTables build_first_seen(const EventLog& log) {
    FirstSeenTables t;
    t.node_first.assign(log.users().size(), FirstSeenTables::kNeverSeen);
    for (const auto& e : log.events()) {
        // log is sorted, so the first write is the minimum
        if (t.node_first[e.src] == FirstSeenTables::kNeverSeen) t.node_first[e.src] = e.ts;
        if (t.node_first[e.dst] == FirstSeenTables::kNeverSeen) t.node_first[e.dst] = e.ts;
        t.edge_first.try_emplace(pair_key(e.src, e.dst), e.ts);
    }
    return t;
}

NoveltyFractions novelty_fractions(const WindowedGraph& g, const FirstSeenTables& tables) {
    if (g.empty()) return {};
    const Timestamp left = g.spec.lo();
    std::size_t new_nodes = 0;
    for (UserId u : g.nodes) {
        Timestamp first = tables.node(u);
        if (first == FirstSeenTables::kNeverSeen)
            throw std::runtime_error("node missing from first-seen tables: graph/log mismatch");
        if (first > left) ++new_nodes;
    }
    std::size_t new_edges = 0;
    for (const auto& e : g.edges) {
        Timestamp first = tables.edge(e.src, e.dst);
        if (first == FirstSeenTables::kNeverSeen)
            throw std::runtime_error("edge missing from first-seen tables: graph/log mismatch");
        if (first > left) ++new_edges;
    }
    NoveltyFractions f;
    f.new_node_prop = static_cast<double>(new_nodes) / g.n_nodes();
    f.new_edge_prop = g.n_edges() ? static_cast<double>(new_edges) / g.n_edges() : 0.0;
    return f;
}

namespace {

double median_of(std::vector<double>& v) {
    if (v.empty()) return 0.0;
    std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    double hi = v[mid];
    if (v.size() % 2 == 1) return hi;
    double lo = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lo + hi);
}

// median and median-absolute-deviation of series values in [b, e)
std::pair<double, double> med_mad(const std::vector<SeriesPoint>& s, std::size_t b,
                                  std::size_t e) {
    std::vector<double> buf;
    buf.reserve(e - b);
    for (std::size_t i = b; i < e; ++i) buf.push_back(s[i].value);
    double med = median_of(buf);
    for (double& x : buf) x = std::abs(x - med);
    double mad = median_of(buf);
    return {med, mad};
}

}  // namespace

std::vector<SeriesPoint> spike_detect(const std::vector<SeriesPoint>& series,
                                      const SpikeOptions& opts) {
    if (series.empty()) throw std::invalid_argument("spike_detect: empty series");
    if (opts.z_threshold <= 0) throw std::invalid_argument("spike_detect: z_threshold must be > 0");
    const std::size_t n = series.size();
    const std::size_t w = opts.rolling_window | 1;  // force odd
    const bool global = n < w;
    const std::size_t half = w / 2;

    std::vector<SeriesPoint> peaks;
    auto [gmed, gmad] = global ? med_mad(series, 0, n) : std::pair<double, double>{0, 0};

    for (std::size_t i = 1; i + 1 < n; ++i) {
        double v = series[i].value;
        if (!(v > series[i - 1].value && v >= series[i + 1].value)) continue;
        double med, mad;
        if (global) {
            med = gmed;
            mad = gmad;
        } else {
            std::size_t b = i >= half ? i - half : 0;
            if (b + w > n) b = n - w;
            std::tie(med, mad) = med_mad(series, b, b + w);
        }
        if (v > med + opts.z_threshold * mad) peaks.push_back(series[i]);
    }
    return peaks;
}

}  // namespace tempograph
