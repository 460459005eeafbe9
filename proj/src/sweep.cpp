#include "tempograph/sweep.hpp"

#include <cstdio>
#include <exception>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "tempograph/metrics.hpp"

namespace tempograph {

namespace {

struct LocalUnionFind {
    std::vector<std::uint32_t> parent;
    std::vector<std::uint32_t> size;

    explicit LocalUnionFind(std::size_t n) : parent(n), size(n, 1) {
        for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<std::uint32_t>(i);
    }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (size[a] < size[b]) std::swap(a, b);
        parent[b] = a;
        size[a] += size[b];
    }
};

WindowMetricsRow row_from_maps(Timestamp t, WindowSpec spec,
                               const std::unordered_map<std::uint64_t, std::uint32_t>& edge_mult,
                               const std::unordered_map<UserId, std::uint32_t>& node_mult,
                               const FirstSeenTables& tables, const SweepOptions& opts) {
    WindowMetricsRow row;
    row.t = t;
    row.n_nodes = node_mult.size();
    row.n_edges = edge_mult.size();
    row.avg_degree =
        row.n_nodes ? static_cast<double>(row.n_edges) / static_cast<double>(row.n_nodes) : 0.0;
    if (row.n_nodes == 0) return row;

    if (opts.novelty) {
        const Timestamp left = spec.lo();
        std::size_t new_nodes = 0, new_edges = 0;
        for (const auto& [u, _] : node_mult) {
            Timestamp first = tables.node(u);
            if (first == FirstSeenTables::kNeverSeen)
                throw std::runtime_error("node missing from first-seen tables");
            if (first > left) ++new_nodes;
        }
        for (const auto& [key, _] : edge_mult) {
            auto it = tables.edge_first.find(key);
            if (it == tables.edge_first.end())
                throw std::runtime_error("edge missing from first-seen tables");
            if (it->second > left) ++new_edges;
        }
        row.new_node_prop = static_cast<double>(new_nodes) / row.n_nodes;
        row.new_edge_prop = row.n_edges ? static_cast<double>(new_edges) / row.n_edges : 0.0;
    }

    if (opts.components) {
        std::unordered_map<UserId, std::uint32_t> idx;
        idx.reserve(node_mult.size());
        for (const auto& [u, _] : node_mult)
            idx.emplace(u, static_cast<std::uint32_t>(idx.size()));
        LocalUnionFind uf(idx.size());
        for (const auto& [key, _] : edge_mult)
            uf.unite(idx[pair_src(key)], idx[pair_dst(key)]);
        std::vector<std::size_t> sizes;
        std::unordered_map<std::uint32_t, std::size_t> roots;
        for (std::uint32_t i = 0; i < idx.size(); ++i)
            ++roots[uf.find(i)];
        sizes.reserve(roots.size());
        for (const auto& [_, s] : roots) sizes.push_back(s);
        auto b = breakdown_from_sizes(sizes);
        row.lcc_prop = b.lcc_prop;
        row.pair_prop = b.pair_prop;
        row.mid_prop = b.mid_prop;
        row.n_components = b.n_components;
    }
    return row;
}

// Sliding kernel used by sweep_metrics. Same two-cursor slide as
// SlidingWindowCursor, but novelty is maintained incrementally: a node or
// pair is new exactly while its first-ever event sits inside the window, so
// the counters flip on that event's entry and exit and no per-window pass
// over the first-seen tables is needed. Components still need a per-window
// pass; it runs over epoch-stamped arrays instead of fresh hash maps.
class SweepKernel {
public:
    SweepKernel(const EventLog& log, const SlidingSchedule& sched,
                const FirstSeenTables& tables, const SweepOptions& opts)
        : log_(log), sched_(sched), tables_(tables), opts_(opts) {
        std::size_t n_ids = log.users().size();
        for (const auto& e : log.events())
            n_ids = std::max({n_ids, static_cast<std::size_t>(e.src) + 1,
                              static_cast<std::size_t>(e.dst) + 1});
        node_mult_.assign(n_ids, 0);
        node_is_new_.assign(n_ids, 0);
        stamp_.assign(n_ids, 0);
        slot_.assign(n_ids, 0);
        parent_.resize(n_ids);
        size_.resize(n_ids);
        root_stamp_.assign(n_ids, 0);
        root_size_.assign(n_ids, 0);
        edge_mult_.reserve(1024);
    }

    WindowMetricsRow row_at(std::size_t i) {
        const WindowSpec spec{sched_.center(i), sched_.tau};
        const auto& ev = log_.events();
        while (head_ < ev.size() && ev[head_].ts <= spec.hi()) enter(ev[head_++]);
        while (tail_ < head_ && ev[tail_].ts <= spec.lo()) exit(ev[tail_++]);

        WindowMetricsRow row;
        row.t = spec.t;
        row.n_nodes = n_nodes_;
        row.n_edges = edge_mult_.size();
        row.avg_degree = n_nodes_ ? static_cast<double>(row.n_edges) /
                                        static_cast<double>(n_nodes_)
                                  : 0.0;
        if (n_nodes_ == 0) return row;
        if (opts_.novelty) {
            row.new_node_prop = static_cast<double>(new_nodes_) / row.n_nodes;
            row.new_edge_prop =
                row.n_edges ? static_cast<double>(new_edges_) / row.n_edges : 0.0;
        }
        if (opts_.components) components_into(row);
        return row;
    }

private:
    struct EdgeState {
        std::uint32_t count = 0;
        bool is_new = false;
    };

    // A node is new while its first-ever event (which may be an excluded
    // self-reply) sits inside the window, so the novelty flag and the
    // window-membership multiplicity are tracked separately; new_nodes_
    // counts nodes with both.
    void flag_enter(UserId u, Timestamp ts) {
        Timestamp first = tables_.node(u);
        if (first == FirstSeenTables::kNeverSeen)
            throw std::runtime_error("node missing from first-seen tables");
        if (!node_is_new_[u] && ts == first) {
            node_is_new_[u] = 1;
            if (node_mult_[u] > 0) ++new_nodes_;
        }
    }

    void flag_exit(UserId u, Timestamp ts) {
        if (node_is_new_[u] && ts == tables_.node(u)) {
            node_is_new_[u] = 0;
            if (node_mult_[u] > 0) --new_nodes_;
        }
    }

    void mult_enter(UserId u) {
        if (node_mult_[u]++ == 0) {
            ++n_nodes_;
            if (node_is_new_[u]) ++new_nodes_;
        }
    }

    void mult_exit(UserId u) {
        if (--node_mult_[u] == 0) {
            --n_nodes_;
            if (node_is_new_[u]) --new_nodes_;
        }
    }

    void enter(const Interaction& e) {
        if (opts_.novelty) {
            flag_enter(e.src, e.ts);
            if (e.dst != e.src) flag_enter(e.dst, e.ts);
        }
        if (e.src == e.dst && !opts_.include_self_loops) return;
        EdgeState& st = edge_mult_[pair_key(e.src, e.dst)];
        ++st.count;
        if (opts_.novelty) {
            Timestamp first = tables_.edge(e.src, e.dst);
            if (first == FirstSeenTables::kNeverSeen)
                throw std::runtime_error("edge missing from first-seen tables");
            if (!st.is_new && e.ts == first) {
                st.is_new = true;
                ++new_edges_;
            }
        }
        mult_enter(e.src);
        mult_enter(e.dst);
    }

    void exit(const Interaction& e) {
        if (!(e.src == e.dst && !opts_.include_self_loops)) {
            auto it = edge_mult_.find(pair_key(e.src, e.dst));
            if (it->second.is_new && e.ts == tables_.edge(e.src, e.dst)) {
                it->second.is_new = false;
                --new_edges_;
            }
            if (--it->second.count == 0) edge_mult_.erase(it);
            mult_exit(e.src);
            mult_exit(e.dst);
        }
        if (opts_.novelty) {
            flag_exit(e.src, e.ts);
            if (e.dst != e.src) flag_exit(e.dst, e.ts);
        }
    }

    std::uint32_t uf_slot(UserId u) {
        if (stamp_[u] != epoch_) {
            stamp_[u] = epoch_;
            slot_[u] = n_slots_;
            parent_[n_slots_] = n_slots_;
            size_[n_slots_] = 1;
            ++n_slots_;
        }
        return slot_[u];
    }

    std::uint32_t uf_find(std::uint32_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void components_into(WindowMetricsRow& row) {
        ++epoch_;
        n_slots_ = 0;
        for (const auto& [key, st] : edge_mult_) {
            std::uint32_t a = uf_find(uf_slot(pair_src(key)));
            std::uint32_t b = uf_find(uf_slot(pair_dst(key)));
            if (a == b) continue;
            if (size_[a] < size_[b]) std::swap(a, b);
            parent_[b] = a;
            size_[a] += size_[b];
        }
        sizes_.clear();
        for (std::uint32_t i = 0; i < n_slots_; ++i) {
            std::uint32_t r = uf_find(i);
            if (root_stamp_[r] != epoch_) {
                root_stamp_[r] = epoch_;
                root_size_[r] = 0;
                roots_.push_back(r);
            }
            ++root_size_[r];
        }
        for (std::uint32_t r : roots_) sizes_.push_back(root_size_[r]);
        roots_.clear();
        auto b = breakdown_from_sizes(sizes_);
        row.lcc_prop = b.lcc_prop;
        row.pair_prop = b.pair_prop;
        row.mid_prop = b.mid_prop;
        row.n_components = b.n_components;
    }

    const EventLog& log_;
    SlidingSchedule sched_;
    const FirstSeenTables& tables_;
    SweepOptions opts_;
    std::size_t head_ = 0, tail_ = 0;
    std::unordered_map<std::uint64_t, EdgeState> edge_mult_;
    std::vector<std::uint32_t> node_mult_;
    std::vector<std::uint8_t> node_is_new_;
    std::size_t n_nodes_ = 0, new_nodes_ = 0, new_edges_ = 0;
    // component scratch, reused across windows via epoch stamps
    std::uint64_t epoch_ = 0;
    std::uint32_t n_slots_ = 0;
    std::vector<std::uint64_t> stamp_, root_stamp_;
    std::vector<std::uint32_t> slot_, parent_, size_, root_size_, roots_;
    std::vector<std::size_t> sizes_;
};

}  // namespace

WindowMetricsRow window_metrics(const WindowedGraph& g, Timestamp t,
                                const FirstSeenTables& tables, const SweepOptions& opts) {
    std::unordered_map<std::uint64_t, std::uint32_t> edge_mult;
    std::unordered_map<UserId, std::uint32_t> node_mult;
    for (const auto& e : g.edges) edge_mult.emplace(pair_key(e.src, e.dst), e.weight);
    for (UserId u : g.nodes) node_mult.emplace(u, 1);
    return row_from_maps(t, g.spec, edge_mult, node_mult, tables, opts);
}

std::vector<WindowMetricsRow> sweep_metrics(const EventLog& log, const SlidingSchedule& sched,
                                            const FirstSeenTables& tables,
                                            const SweepOptions& opts) {
    const std::size_t n = sched.n_windows();
    std::vector<WindowMetricsRow> rows(n);
    if (n == 0) return rows;

    int threads = opts.threads;
#ifdef _OPENMP
    if (threads <= 0) threads = omp_get_max_threads();
#else
    threads = 1;
#endif
    if (static_cast<std::size_t>(threads) > n) threads = static_cast<int>(n);

    std::exception_ptr error;  // rethrown outside the parallel region
#pragma omp parallel num_threads(threads)
    {
#ifdef _OPENMP
        const int tid = omp_get_thread_num();
        const int nt = omp_get_num_threads();
#else
        const int tid = 0, nt = 1;
#endif
        const std::size_t chunk = (n + nt - 1) / nt;
        const std::size_t begin = static_cast<std::size_t>(tid) * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        if (begin < end) {
            try {
                SweepKernel kernel(log, sched, tables, opts);
                for (std::size_t i = begin; i < end; ++i) rows[i] = kernel.row_at(i);
            } catch (...) {
#pragma omp critical
                error = std::current_exception();
            }
        }
    }
    if (error) std::rethrow_exception(error);
    return rows;
}

std::vector<WindowMetricsRow> sweep_metrics_naive(const EventLog& log,
                                                  const SlidingSchedule& sched,
                                                  const FirstSeenTables& tables,
                                                  const SweepOptions& opts) {
    std::vector<WindowMetricsRow> rows;
    rows.reserve(sched.n_windows());
    for (std::size_t i = 0; i < sched.n_windows(); ++i) {
        WindowSpec spec{sched.center(i), sched.tau};
        std::unordered_map<std::uint64_t, std::uint32_t> edge_mult;
        std::unordered_map<UserId, std::uint32_t> node_mult;
        for (const auto& e : log.events()) {
            if (e.ts <= spec.lo() || e.ts > spec.hi()) continue;
            if (e.src == e.dst && !opts.include_self_loops) continue;
            ++edge_mult[pair_key(e.src, e.dst)];
            ++node_mult[e.src];
            ++node_mult[e.dst];
        }
        rows.push_back(row_from_maps(spec.t, spec, edge_mult, node_mult, tables, opts));
    }
    return rows;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

void write_metrics_csv(const std::vector<WindowMetricsRow>& rows, std::ostream& out) {
    out << "t,n_nodes,n_edges,avg_degree,new_node_prop,new_edge_prop,"
           "lcc_prop,pair_prop,mid_prop,n_components\n";
    for (const auto& r : rows) {
        out << r.t << ',' << r.n_nodes << ',' << r.n_edges << ',' << format_double(r.avg_degree)
            << ',' << format_double(r.new_node_prop) << ',' << format_double(r.new_edge_prop)
            << ',' << format_double(r.lcc_prop) << ',' << format_double(r.pair_prop) << ','
            << format_double(r.mid_prop) << ',' << r.n_components << '\n';
    }
}

void write_metrics_csv_file(const std::vector<WindowMetricsRow>& rows, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    write_metrics_csv(rows, f);
}

}  // namespace tempograph
