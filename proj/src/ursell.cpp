#include "polygas/ursell.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <string>

namespace polygas {

namespace {

constexpr std::uint64_t bit64(unsigned v) { return std::uint64_t{1} << v; }

bool edge_subset_spans_connected(std::size_t n_vertices,
                                 const std::vector<std::pair<unsigned, unsigned>>& edges,
                                 std::uint32_t mask) {
    std::uint64_t adj[32] = {};
    for (std::size_t e = 0; e < edges.size(); ++e)
        if (mask & (std::uint32_t{1} << e)) {
            adj[edges[e].first] |= bit64(edges[e].second);
            adj[edges[e].second] |= bit64(edges[e].first);
        }
    const std::uint64_t all =
        (n_vertices == 64) ? ~std::uint64_t{0} : (bit64(n_vertices) - 1);
    std::uint64_t reached = 1;
    for (;;) {
        std::uint64_t next = reached;
        for (std::uint64_t r = reached; r;) {
            const unsigned v = static_cast<unsigned>(std::countr_zero(r));
            r &= r - 1;
            next |= adj[v];
        }
        if (next == reached) break;
        reached = next;
    }
    return reached == all;
}

}  // namespace

std::vector<std::pair<unsigned, unsigned>> RootedLabeledTree::edges() const {
    std::vector<std::pair<unsigned, unsigned>> out;
    for (unsigned v = 1; v < n_vertices; ++v)
        out.emplace_back(std::min(parent[v], v), std::max(parent[v], v));
    std::sort(out.begin(), out.end());
    return out;
}

std::int64_t css_signed_sum(const ClusterGraph& cg, const UrsellCaps& caps) {
    if (!is_connected(cg)) throw std::invalid_argument("signed subgraph sum needs a connected graph");
    if (cg.edges.size() > caps.max_css_edges || cg.edges.size() > 30)
        throw std::length_error("cluster graph has " + std::to_string(cg.edges.size()) +
                                " edges, over the edge-subset cap of " +
                                std::to_string(std::min<std::size_t>(caps.max_css_edges, 30)));
    const std::size_t m = cg.edges.size();
    std::int64_t sum = 0;
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << m); ++mask)
        if (edge_subset_spans_connected(cg.n_vertices, cg.edges, mask))
            sum += (std::popcount(mask) % 2 == 0) ? 1 : -1;
    return sum;
}

std::int64_t css_signed_sum_dp(const ClusterGraph& cg, const UrsellCaps& caps) {
    const std::size_t n = cg.n_vertices;
    if (n == 0) throw std::invalid_argument("signed subgraph sum of an empty graph");
    if (n > caps.max_dp_vertices || n > 24)
        throw std::length_error("cluster graph has " + std::to_string(n) +
                                " vertices, over the subset-recursion cap of " +
                                std::to_string(std::min<std::size_t>(caps.max_dp_vertices, 24)));
    const auto adj = cg.adjacency_masks();
    const std::uint32_t full = static_cast<std::uint32_t>((std::uint64_t{1} << n) - 1);

    // edgeless[W]: the subgraph induced on W has no edges.
    std::vector<char> edgeless(full + 1);
    edgeless[0] = 1;
    for (std::uint32_t w = 1; w <= full; ++w) {
        const unsigned v = static_cast<unsigned>(std::countr_zero(w));
        const std::uint32_t rest = w & (w - 1);
        edgeless[w] = edgeless[rest] && ((adj[v] & rest) == 0);
    }

    // conn[W]: signed connected-spanning-subgraph sum of the subgraph on W,
    // peeled off the component of W's lowest vertex.
    std::vector<std::int64_t> conn(full + 1, 0);
    for (std::uint32_t w = 1; w <= full; ++w) {
        const std::uint32_t rbit = w & (~w + 1);
        const std::uint32_t others = w ^ rbit;
        std::int64_t total = edgeless[w] ? 1 : 0;
        if (others != 0) {
            // Proper submasks S = rbit | t with t strictly inside `others`.
            for (std::uint32_t t = (others - 1) & others;; t = (t - 1) & others) {
                if (edgeless[others ^ t]) total -= conn[rbit | t];
                if (t == 0) break;
            }
        }
        conn[w] = total;
    }
    return conn[full];
}

std::int64_t ursell_coefficient(const InteractionGraph& g, const std::vector<PolymerId>& sequence,
                                const UrsellCaps& caps) {
    if (sequence.empty()) throw std::invalid_argument("ursell coefficient of an empty sequence");
    if (sequence.size() == 1) return 1;
    const ClusterGraph cg = cluster_graph(g, sequence);
    if (!is_connected(cg)) return 0;
    return css_signed_sum(cg, caps);
}

namespace {

/// Decodes a Pruefer sequence over {0..n-1} (length n-2) into tree edges.
std::vector<std::pair<unsigned, unsigned>> pruefer_decode(std::size_t n,
                                                          const std::vector<unsigned>& code) {
    std::vector<unsigned> degree(n, 1);
    for (unsigned x : code) ++degree[x];
    std::vector<std::pair<unsigned, unsigned>> edges;
    edges.reserve(n - 1);
    std::vector<char> used(n, 0);
    for (unsigned x : code) {
        unsigned leaf = 0;
        while (leaf < n && (degree[leaf] != 1 || used[leaf])) ++leaf;
        edges.emplace_back(std::min(leaf, x), std::max(leaf, x));
        used[leaf] = 1;
        --degree[x];
    }
    unsigned a = n, b = n;
    for (unsigned v = 0; v < n; ++v)
        if (!used[v] && degree[v] == 1) (a == n ? a : b) = v;
    edges.emplace_back(a, b);
    return edges;
}

RootedLabeledTree root_tree(std::size_t n, const std::vector<std::pair<unsigned, unsigned>>& edges) {
    std::vector<std::vector<unsigned>> adj(n);
    for (const auto& [u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    RootedLabeledTree t;
    t.n_vertices = n;
    t.parent.assign(n, 0);
    t.depth.assign(n, 0);
    std::vector<char> seen(n, 0);
    std::vector<unsigned> queue{0};
    seen[0] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const unsigned u = queue[head];
        for (unsigned v : adj[u])
            if (!seen[v]) {
                seen[v] = 1;
                t.parent[v] = u;
                t.depth[v] = t.depth[u] + 1;
                queue.push_back(v);
            }
    }
    return t;
}

}  // namespace

std::vector<RootedLabeledTree> enumerate_rooted_spanning_trees(const ClusterGraph& cg,
                                                               const UrsellCaps& caps) {
    const std::size_t n = cg.n_vertices;
    if (!is_connected(cg)) throw std::invalid_argument("spanning trees need a connected graph");
    if (n > caps.max_tree_vertices)
        throw std::length_error("cluster graph has " + std::to_string(n) +
                                " vertices, over the tree-enumeration cap of " +
                                std::to_string(caps.max_tree_vertices));
    std::vector<RootedLabeledTree> trees;
    if (n == 1) {
        trees.push_back(RootedLabeledTree{1, {0}, {0}});
        return trees;
    }
    std::vector<unsigned> code(n > 2 ? n - 2 : 0, 0);
    for (;;) {
        auto edges = pruefer_decode(n, code);
        const bool inside = std::all_of(edges.begin(), edges.end(), [&](const auto& e) {
            return cg.has_edge(e.first, e.second);
        });
        if (inside) trees.push_back(root_tree(n, edges));
        // next Pruefer sequence, odometer style
        std::size_t pos = 0;
        while (pos < code.size() && code[pos] + 1 == n) code[pos++] = 0;
        if (pos == code.size()) break;
        ++code[pos];
    }
    return trees;
}

ClusterGraph penrose_closure(const RootedLabeledTree& tau, const ClusterGraph& cg) {
    if (tau.n_vertices != cg.n_vertices)
        throw std::invalid_argument("tree and cluster graph have different vertex counts");
    const auto tree_edges = tau.edges();
    for (const auto& [u, v] : tree_edges)
        if (!cg.has_edge(u, v))
            throw std::invalid_argument("tree is not a subgraph of the cluster graph");

    auto closure = tree_edges;
    for (const auto& [i, j] : cg.edges) {
        if (std::binary_search(tree_edges.begin(), tree_edges.end(), std::make_pair(i, j)))
            continue;
        const unsigned di = tau.depth[i], dj = tau.depth[j];
        if (di == dj) {
            closure.emplace_back(i, j);
        } else if (di + 1 == dj || dj + 1 == di) {
            const unsigned upper = (di < dj) ? i : j;
            const unsigned lower = (di < dj) ? j : i;
            if (upper < tau.parent[lower]) closure.emplace_back(i, j);
        }
    }
    return make_cluster_graph(cg.n_vertices, std::move(closure));
}

std::int64_t penrose_tree_count(const ClusterGraph& cg, const UrsellCaps& caps) {
    std::int64_t count = 0;
    for (const auto& tau : enumerate_rooted_spanning_trees(cg, caps))
        if (penrose_closure(tau, cg).edges.size() == cg.n_vertices - 1) ++count;
    return count;
}

PartitionSchemeReport verify_partition_scheme(const ClusterGraph& cg, const UrsellCaps& caps) {
    if (!is_connected(cg)) throw std::invalid_argument("partition scheme needs a connected graph");
    if (cg.edges.size() > caps.max_css_edges || cg.edges.size() > 30 ||
        cg.n_vertices > caps.max_tree_vertices)
        throw std::length_error("cluster graph over the partition-scheme verification caps");

    const std::size_t m = cg.edges.size();
    std::map<std::uint32_t, int> coverage;
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << m); ++mask)
        if (edge_subset_spans_connected(cg.n_vertices, cg.edges, mask)) coverage[mask] = 0;

    auto edge_index = [&](unsigned u, unsigned v) {
        const auto it = std::lower_bound(cg.edges.begin(), cg.edges.end(),
                                         std::make_pair(std::min(u, v), std::max(u, v)));
        return static_cast<std::uint32_t>(it - cg.edges.begin());
    };
    auto to_mask = [&](const std::vector<std::pair<unsigned, unsigned>>& edges) {
        std::uint32_t mask = 0;
        for (const auto& [u, v] : edges) mask |= std::uint32_t{1} << edge_index(u, v);
        return mask;
    };

    PartitionSchemeReport report;
    report.n_css = coverage.size();

    const auto trees = enumerate_rooted_spanning_trees(cg, caps);
    report.n_trees = trees.size();
    for (const auto& tau : trees) {
        const std::uint32_t tree_mask = to_mask(tau.edges());
        const std::uint32_t closure_mask = to_mask(penrose_closure(tau, cg).edges);
        const std::uint32_t extra = closure_mask & ~tree_mask;
        // Every member of the interval [tau, closure(tau)].
        std::uint32_t sub = 0;
        for (;;) {
            const std::uint32_t member = tree_mask | sub;
            const auto it = coverage.find(member);
            if (it == coverage.end())
                report.violations.push_back("interval member " + std::to_string(member) +
                                            " is not a connected spanning subgraph");
            else
                ++it->second;
            sub = (sub - extra) & extra;
            if (sub == 0) break;
        }
    }
    for (const auto& [mask, count] : coverage)
        if (count != 1)
            report.violations.push_back("subgraph mask " + std::to_string(mask) + " covered " +
                                        std::to_string(count) + " times");
    report.ok = report.violations.empty();
    return report;
}

namespace {

/// Ursell values keyed by the sorted polymer sequence; the value of a
/// sequence only depends on its multiset.
class UrsellCache {
public:
    UrsellCache(const InteractionGraph& g, const UrsellCaps& caps) : g_(g), caps_(caps) {}

    std::int64_t value(const std::vector<PolymerId>& sequence) {
        key_ = sequence;
        std::sort(key_.begin(), key_.end());
        const auto it = memo_.find(key_);
        if (it != memo_.end()) return it->second;
        std::int64_t val = 0;
        if (key_.size() == 1) {
            val = 1;
        } else {
            const ClusterGraph cg = cluster_graph(g_, key_);
            if (is_connected(cg)) val = css_signed_sum_dp(cg, caps_);
        }
        memo_.emplace(key_, val);
        return val;
    }

private:
    const InteractionGraph& g_;
    UrsellCaps caps_;
    std::vector<PolymerId> key_;
    std::map<std::vector<PolymerId>, std::int64_t> memo_;
};

/// Runs fn over every n-tuple drawn from `pool`, charging one unit of
/// budget per tuple.
template <class Fn>
void for_each_tuple(const std::vector<PolymerId>& pool, std::size_t n, std::uint64_t& budget,
                    Fn&& fn) {
    std::vector<PolymerId> tuple(n);
    std::vector<std::size_t> idx(n, 0);
    for (;;) {
        if (budget == 0)
            throw std::length_error("sequence sweep exceeded the tuple-work budget");
        --budget;
        for (std::size_t i = 0; i < n; ++i) tuple[i] = pool[idx[i]];
        fn(tuple);
        std::size_t pos = 0;
        while (pos < n && idx[pos] + 1 == pool.size()) idx[pos++] = 0;
        if (pos == n) break;
        ++idx[pos];
    }
}

std::vector<PolymerId> members_of(const PolymerSet& region) {
    std::vector<PolymerId> out;
    for (PolymerId v = region.find_first(); v != PolymerSet::npos; v = region.find_next(v))
        out.push_back(v);
    return out;
}

}  // namespace

double pi_truncated(const InteractionGraph& g, PolymerId g0, const ActivityVector& rho,
                    std::size_t n_max, const UrsellCaps& caps) {
    if (g0 >= g.n_polymers()) throw std::out_of_range("pinned polymer out of range");
    if (rho.size() != g.n_polymers())
        throw std::invalid_argument("activity vector sized for a different graph");
    for (double r : rho)
        if (!(r >= 0.0)) throw std::invalid_argument("pinned series needs nonnegative activities");
    if (n_max > caps.max_order)
        throw std::length_error("truncation order over the cap of " +
                                std::to_string(caps.max_order));
    if (n_max + 1 > caps.max_dp_vertices)
        throw std::length_error("truncation order needs clusters over the subset-recursion cap");

    UrsellCache ursell(g, caps);
    const auto pool = members_of(g.all_polymers());
    std::uint64_t budget = caps.max_tuple_work;

    double total = 1.0;
    double factorial = 1.0;
    std::vector<PolymerId> sequence;
    for (std::size_t n = 1; n <= n_max; ++n) {
        factorial *= static_cast<double>(n);
        double order_sum = 0.0;
        for_each_tuple(pool, n, budget, [&](const std::vector<PolymerId>& tuple) {
            sequence.assign(1, g0);
            sequence.insert(sequence.end(), tuple.begin(), tuple.end());
            const std::int64_t phi = ursell.value(sequence);
            if (phi == 0) return;
            double weight = static_cast<double>(std::abs(phi));
            for (PolymerId v : tuple) weight *= rho[v];
            order_sum += weight;
        });
        total += order_sum / factorial;
    }
    return total;
}

double mayer_log_truncated(const InteractionGraph& g, const PolymerSet& region,
                           const ActivityVector& z, std::size_t n_max, const UrsellCaps& caps) {
    if (region.size() != g.n_polymers())
        throw std::invalid_argument("region set sized for a different graph");
    if (z.size() != g.n_polymers())
        throw std::invalid_argument("activity vector sized for a different graph");
    if (n_max > caps.max_order)
        throw std::length_error("truncation order over the cap of " +
                                std::to_string(caps.max_order));
    if (n_max > caps.max_dp_vertices)
        throw std::length_error("truncation order needs clusters over the subset-recursion cap");

    UrsellCache ursell(g, caps);
    const auto pool = members_of(region);
    if (pool.empty()) return 0.0;
    std::uint64_t budget = caps.max_tuple_work;

    double total = 0.0;
    double factorial = 1.0;
    for (std::size_t n = 1; n <= n_max; ++n) {
        factorial *= static_cast<double>(n);
        double order_sum = 0.0;
        for_each_tuple(pool, n, budget, [&](const std::vector<PolymerId>& tuple) {
            const std::int64_t phi = ursell.value(tuple);
            if (phi == 0) return;
            double weight = static_cast<double>(phi);
            for (PolymerId v : tuple) weight *= z[v];
            order_sum += weight;
        });
        total += order_sum / factorial;
    }
    return total;
}

}  // namespace polygas
