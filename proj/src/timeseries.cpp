#include "tempograph/timeseries.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include <fftw3.h>

namespace tempograph {

std::vector<CdfPoint> empirical_cdf(std::vector<double> values) {
    std::vector<CdfPoint> cdf;
    if (values.empty()) return cdf;
    std::sort(values.begin(), values.end());
    const double n = static_cast<double>(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i + 1 < values.size() && values[i + 1] == values[i]) continue;
        cdf.push_back({values[i], static_cast<double>(i + 1) / n});
    }
    return cdf;
}

std::vector<DensificationPoint> densification_curve(const EventLog& log,
                                                    const std::vector<std::int64_t>& taus,
                                                    std::int64_t delta, int threads) {
    if (taus.empty()) throw std::invalid_argument("densification_curve: no window sizes");
    SweepOptions opts;
    opts.novelty = false;
    opts.components = false;
    opts.threads = threads;

    std::vector<DensificationPoint> out;
    for (std::int64_t tau : taus) {
        auto rows = sweep_metrics(log, default_schedule(log, tau, delta), FirstSeenTables{}, opts);
        DensificationPoint p{};
        p.tau = tau;
        p.n_windows = rows.size();
        if (rows.empty()) {
            out.push_back(p);
            continue;
        }
        auto stats = [&](auto get, double& mean, double& sd) {
            double s = 0;
            for (const auto& r : rows) s += get(r);
            mean = s / static_cast<double>(rows.size());
            double v = 0;
            for (const auto& r : rows) {
                double d = get(r) - mean;
                v += d * d;
            }
            sd = std::sqrt(v / static_cast<double>(rows.size()));  // population stddev
        };
        stats([](const WindowMetricsRow& r) { return static_cast<double>(r.n_nodes); },
              p.mean_nodes, p.std_nodes);
        stats([](const WindowMetricsRow& r) { return static_cast<double>(r.n_edges); },
              p.mean_edges, p.std_edges);
        stats([](const WindowMetricsRow& r) { return r.avg_degree; }, p.mean_avg_degree,
              p.std_avg_degree);
        out.push_back(p);
    }
    return out;
}

WindowSeries low_pass(const WindowSeries& series, std::int64_t cutoff_period) {
    if (series.spacing <= 0) throw std::invalid_argument("low_pass: nonpositive spacing");
    if (cutoff_period <= 2 * series.spacing)
        throw std::invalid_argument("low_pass: cutoff period at or below Nyquist (2 x spacing)");
    const std::size_t n = series.size();
    WindowSeries out = series;
    if (n < 2) return out;

    std::vector<double> in(series.values);
    std::vector<fftw_complex> spec(n / 2 + 1);
    fftw_plan fwd =
        fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data(), spec.data(), FFTW_ESTIMATE);
    fftw_execute(fwd);
    fftw_destroy_plan(fwd);

    // bin k has period n*spacing/k; zero everything sharper than the cutoff
    const double total = static_cast<double>(n) * static_cast<double>(series.spacing);
    const auto k_max = static_cast<std::size_t>(std::floor(total / static_cast<double>(cutoff_period)));
    for (std::size_t k = 0; k <= n / 2; ++k) {
        if (k > k_max) {
            spec[k][0] = 0.0;
            spec[k][1] = 0.0;
        }
    }

    fftw_plan bwd =
        fftw_plan_dft_c2r_1d(static_cast<int>(n), spec.data(), in.data(), FFTW_ESTIMATE);
    fftw_execute(bwd);
    fftw_destroy_plan(bwd);

    for (std::size_t i = 0; i < n; ++i) out.values[i] = in[i] / static_cast<double>(n);
    return out;
}

namespace {

// (indegree, user) per window node, ranked descending with ascending-user
// tie break, truncated to k
std::vector<std::pair<std::size_t, UserId>> rank_window(
    const std::unordered_map<std::uint64_t, std::uint32_t>& edge_mult,
    const std::unordered_map<UserId, std::uint32_t>& node_mult, std::size_t k) {
    std::unordered_map<UserId, std::size_t> indeg;
    for (const auto& [key, _] : edge_mult) ++indeg[pair_dst(key)];
    std::vector<std::pair<std::size_t, UserId>> ranked;
    ranked.reserve(node_mult.size());
    for (const auto& [u, _] : node_mult) {
        auto it = indeg.find(u);
        ranked.emplace_back(it == indeg.end() ? 0 : it->second, u);
    }
    auto better = [](const auto& a, const auto& b) {
        return a.first != b.first ? a.first > b.first : a.second < b.second;
    };
    if (ranked.size() > k) {
        std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(k),
                          ranked.end(), better);
        ranked.resize(k);
    } else {
        std::sort(ranked.begin(), ranked.end(), better);
    }
    return ranked;
}

}  // namespace

ChurnReport topk_persistence(const EventLog& log, const SlidingSchedule& sched, std::size_t k,
                             bool include_self_loops) {
    if (k == 0) throw std::invalid_argument("topk_persistence: k must be >= 1");
    ChurnReport report;
    report.k = k;
    report.n_windows = sched.n_windows();

    struct Tally {
        std::size_t count = 0;
        Timestamp first_t = 0;
        Timestamp last_t = 0;
    };
    std::unordered_map<UserId, Tally> tallies;

    SlidingWindowCursor cur(log, sched, include_self_loops);
    for (std::size_t i = 0; i < sched.n_windows(); ++i) {
        cur.seek(i);
        for (const auto& [d, u] : rank_window(cur.edge_mult(), cur.node_mult(), k)) {
            auto [it, fresh] = tallies.try_emplace(u);
            if (fresh) it->second.first_t = cur.center();
            ++it->second.count;
            it->second.last_t = cur.center();
        }
    }

    for (const auto& [u, t] : tallies) {
        double prop = report.n_windows
                          ? static_cast<double>(t.count) / static_cast<double>(report.n_windows)
                          : 0.0;
        report.entries.push_back({u, t.count, prop, t.first_t, t.last_t});
    }
    std::sort(report.entries.begin(), report.entries.end(),
              [](const ChurnEntry& a, const ChurnEntry& b) {
                  return a.windows_in_topk != b.windows_in_topk
                             ? a.windows_in_topk > b.windows_in_topk
                             : a.user < b.user;
              });

    // realized proportions, ascending; count of users at or above each
    std::vector<std::size_t> counts;
    for (const auto& e : report.entries) counts.push_back(e.windows_in_topk);
    std::sort(counts.begin(), counts.end());
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (i + 1 < counts.size() && counts[i + 1] == counts[i]) continue;
        report.curve.push_back(
            {static_cast<double>(counts[i]) / static_cast<double>(report.n_windows),
             counts.size() - i});
    }
    return report;
}

std::vector<WindowSeries> top_user_trajectories(const EventLog& log,
                                                const SlidingSchedule& sched,
                                                const std::vector<UserId>& users,
                                                bool include_self_loops) {
    std::unordered_map<UserId, std::size_t> slot;
    for (std::size_t i = 0; i < users.size(); ++i) slot.emplace(users[i], i);

    std::vector<WindowSeries> out(users.size());
    for (auto& s : out) {
        s.t0 = sched.t_first;
        s.spacing = sched.delta;
        s.values.assign(sched.n_windows(), 0.0);
    }

    SlidingWindowCursor cur(log, sched, include_self_loops);
    std::vector<std::size_t> indeg(users.size());
    for (std::size_t i = 0; i < sched.n_windows(); ++i) {
        cur.seek(i);
        std::fill(indeg.begin(), indeg.end(), 0);
        for (const auto& [key, _] : cur.edge_mult()) {
            auto it = slot.find(pair_dst(key));
            if (it != slot.end()) ++indeg[it->second];
        }
        const std::size_t n = cur.node_mult().size();
        if (n == 0) continue;
        for (std::size_t u = 0; u < users.size(); ++u) {
            // absent users contribute 0, keeping the series on the uniform grid
            if (cur.node_mult().count(users[u]))
                out[u].values[i] = static_cast<double>(indeg[u]) / static_cast<double>(n);
        }
    }
    return out;
}

}  // namespace tempograph
