#include "tempograph/metrics.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace tempograph {

namespace {

struct UnionFind {
    std::vector<std::uint32_t> parent;
    std::vector<std::uint32_t> size;

    explicit UnionFind(std::size_t n) : parent(n), size(n, 1) {
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

// Node ids in a WindowedGraph are sorted, so the dense index of a node is
// its position in g.nodes.
std::uint32_t node_index(const WindowedGraph& g, UserId u) {
    auto it = std::lower_bound(g.nodes.begin(), g.nodes.end(), u);
    return static_cast<std::uint32_t>(it - g.nodes.begin());
}

}  // namespace

BasicCounts basic_counts(const WindowedGraph& g) {
    BasicCounts c;
    c.n_nodes = g.n_nodes();
    c.n_edges = g.n_edges();
    c.avg_degree = c.n_nodes == 0 ? 0.0 : static_cast<double>(c.n_edges) / c.n_nodes;
    return c;
}

std::vector<std::vector<UserId>> components(const WindowedGraph& g) {
    UnionFind uf(g.n_nodes());
    for (const auto& e : g.edges) uf.unite(node_index(g, e.src), node_index(g, e.dst));

    std::unordered_map<std::uint32_t, std::size_t> root_slot;
    std::vector<std::vector<UserId>> comps;
    for (std::size_t i = 0; i < g.n_nodes(); ++i) {
        std::uint32_t r = uf.find(static_cast<std::uint32_t>(i));
        auto [it, fresh] = root_slot.try_emplace(r, comps.size());
        if (fresh) comps.emplace_back();
        comps[it->second].push_back(g.nodes[i]);
    }
    return comps;  // nodes ascending within and across components by construction
}

ComponentBreakdown breakdown_from_sizes(const std::vector<std::size_t>& sizes) {
    ComponentBreakdown b;
    b.n_components = sizes.size();
    std::size_t lcc = 0, pair_nodes = 0;
    for (std::size_t s : sizes) {
        b.n_nodes += s;
        lcc = std::max(lcc, s);
        if (s == 2) pair_nodes += 2;
    }
    if (b.n_nodes == 0) return b;
    b.lcc_size = lcc;
    // one maximal component counts as the LCC; a tied pair stays a pair only
    // if it is not the chosen LCC
    if (lcc == 2 && pair_nodes >= 2) pair_nodes -= 2;
    std::size_t mid_nodes = b.n_nodes - b.lcc_size - pair_nodes;
    // components of size 1 cannot occur in windowed graphs (no isolated
    // nodes by construction) but are folded into mid for robustness
    b.lcc_prop = static_cast<double>(b.lcc_size) / b.n_nodes;
    b.pair_prop = static_cast<double>(pair_nodes) / b.n_nodes;
    b.mid_prop = static_cast<double>(mid_nodes) / b.n_nodes;
    return b;
}

ComponentBreakdown component_breakdown(const WindowedGraph& g) {
    UnionFind uf(g.n_nodes());
    for (const auto& e : g.edges) uf.unite(node_index(g, e.src), node_index(g, e.dst));
    std::unordered_map<std::uint32_t, std::size_t> root_size;
    for (std::size_t i = 0; i < g.n_nodes(); ++i) ++root_size[uf.find(static_cast<std::uint32_t>(i))];
    std::vector<std::size_t> sizes;
    sizes.reserve(root_size.size());
    for (const auto& [_, s] : root_size) sizes.push_back(s);
    return breakdown_from_sizes(sizes);
}

std::vector<RankedUser> top_k_indegree(const WindowedGraph& g, std::size_t k) {
    if (k == 0) throw std::invalid_argument("k must be >= 1");
    // edges are deduplicated, so in-degree = number of edges into the node
    std::unordered_map<UserId, std::size_t> indeg;
    for (const auto& e : g.edges) ++indeg[e.dst];

    std::vector<std::pair<std::size_t, UserId>> ranked;
    ranked.reserve(g.n_nodes());
    for (UserId u : g.nodes) {
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

    std::vector<RankedUser> out;
    out.reserve(ranked.size());
    for (const auto& [d, u] : ranked)
        out.push_back({u, d, g.n_nodes() ? static_cast<double>(d) / g.n_nodes() : 0.0});
    return out;
}

AggregateDistributions aggregate_distributions(const EventLog& log) {
    std::unordered_map<std::uint64_t, std::uint64_t> weight;   // ordered pair -> count
    std::unordered_map<UserId, std::uint64_t> interactions;    // user -> event count
    for (const auto& e : log.events()) {
        if (e.src == e.dst) continue;
        ++weight[pair_key(e.src, e.dst)];
        ++interactions[e.src];
        ++interactions[e.dst];
    }

    std::unordered_map<UserId, std::unordered_set<UserId>> partners, in_nb, out_nb;
    for (const auto& [key, _] : weight) {
        UserId u = pair_src(key), v = pair_dst(key);
        partners[u].insert(v);
        partners[v].insert(u);
        out_nb[u].insert(v);
        in_nb[v].insert(u);
    }

    AggregateDistributions d;
    for (const auto& [_, w] : weight) ++d.edge_weight[w];
    for (const auto& [u, n] : interactions) ++d.interaction_degree[n];
    for (const auto& [u, s] : partners) ++d.node_degree[s.size()];
    for (const auto& [u, s] : in_nb) ++d.node_in_degree[s.size()];
    for (const auto& [u, s] : out_nb) ++d.node_out_degree[s.size()];
    return d;
}

std::vector<UserId> aggregate_top_indegree(const EventLog& log, std::size_t k) {
    std::unordered_map<UserId, std::unordered_set<UserId>> in_nb;
    for (const auto& e : log.events()) {
        if (e.src == e.dst) continue;
        in_nb[e.dst].insert(e.src);
    }
    std::vector<std::pair<std::size_t, UserId>> ranked;
    ranked.reserve(in_nb.size());
    for (const auto& [u, s] : in_nb) ranked.emplace_back(s.size(), u);
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    if (ranked.size() > k) ranked.resize(k);
    std::vector<UserId> out;
    for (const auto& [_, u] : ranked) out.push_back(u);
    return out;
}

}  // namespace tempograph
