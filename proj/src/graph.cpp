#include "polygas/graph.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace polygas {

void InteractionGraph::check_id(PolymerId v) const {
    if (v >= adj_.size())
        throw std::out_of_range("polymer id " + std::to_string(v) + " out of range (n=" +
                                std::to_string(adj_.size()) + ")");
}

void InteractionGraph::add_incompatibility(PolymerId u, PolymerId v) {
    check_id(u);
    check_id(v);
    if (u == v)
        throw std::invalid_argument("explicit self-incompatibility rejected (polymer " +
                                    std::to_string(u) + "); self-exclusion is implicit");
    adj_[u].set(v);
    adj_[v].set(u);
}

bool InteractionGraph::has_incompatibility(PolymerId u, PolymerId v) const {
    check_id(u);
    check_id(v);
    return u != v && adj_[u].test(v);
}

bool InteractionGraph::are_compatible(PolymerId u, PolymerId v) const {
    check_id(u);
    check_id(v);
    if (u == v) return false;
    return !adj_[u].test(v);
}

std::size_t InteractionGraph::degree(PolymerId v) const {
    check_id(v);
    return adj_[v].count();
}

std::size_t InteractionGraph::max_degree() const {
    std::size_t d = 0;
    for (const auto& row : adj_) d = std::max(d, row.count());
    return d;
}

const PolymerSet& InteractionGraph::open_neighborhood(PolymerId v) const {
    check_id(v);
    return adj_[v];
}

PolymerSet InteractionGraph::closed_neighborhood(PolymerId v) const {
    check_id(v);
    PolymerSet s = adj_[v];
    s.set(v);
    return s;
}

PolymerSet InteractionGraph::all_polymers() const {
    PolymerSet s(adj_.size());
    s.set();
    return s;
}

std::vector<std::pair<PolymerId, PolymerId>> InteractionGraph::edges() const {
    std::vector<std::pair<PolymerId, PolymerId>> out;
    for (PolymerId u = 0; u < adj_.size(); ++u)
        for (PolymerId v = adj_[u].find_next(u); v != PolymerSet::npos; v = adj_[u].find_next(v))
            out.emplace_back(u, v);
    return out;
}

InteractionGraph InteractionGraph::induced_subgraph(const PolymerSet& members,
                                                    std::vector<PolymerId>* old_ids) const {
    if (members.size() != adj_.size())
        throw std::invalid_argument("member set sized for a different graph");
    std::vector<PolymerId> ids;
    for (PolymerId v = members.find_first(); v != PolymerSet::npos; v = members.find_next(v))
        ids.push_back(v);

    InteractionGraph sub(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i)
        for (std::size_t j = i + 1; j < ids.size(); ++j)
            if (adj_[ids[i]].test(ids[j])) sub.add_incompatibility(i, j);
    if (old_ids) *old_ids = std::move(ids);
    return sub;
}

bool InteractionGraph::triangle_free() const {
    for (PolymerId u = 0; u < adj_.size(); ++u)
        for (PolymerId v = adj_[u].find_next(u); v != PolymerSet::npos; v = adj_[u].find_next(v))
            if (adj_[u].intersects(adj_[v])) return false;
    return true;
}

InteractionGraph build_graph(std::size_t n_polymers,
                             const std::vector<std::pair<PolymerId, PolymerId>>& incompat_pairs) {
    InteractionGraph g(n_polymers);
    for (const auto& [u, v] : incompat_pairs) g.add_incompatibility(u, v);
    return g;
}

PolymerSet make_polymer_set(std::size_t n_polymers, std::initializer_list<PolymerId> members) {
    PolymerSet s(n_polymers);
    for (PolymerId v : members) {
        if (v >= n_polymers) throw std::out_of_range("polymer id out of range in set");
        s.set(v);
    }
    return s;
}

PolymerSet make_polymer_set(std::size_t n_polymers, const std::vector<PolymerId>& members) {
    PolymerSet s(n_polymers);
    for (PolymerId v : members) {
        if (v >= n_polymers) throw std::out_of_range("polymer id out of range in set");
        s.set(v);
    }
    return s;
}

bool ClusterGraph::has_edge(unsigned i, unsigned j) const {
    if (i > j) std::swap(i, j);
    return std::binary_search(edges.begin(), edges.end(), std::make_pair(i, j));
}

std::vector<std::uint64_t> ClusterGraph::adjacency_masks() const {
    if (n_vertices > 64) throw std::length_error("cluster graph too large for bitmask adjacency");
    std::vector<std::uint64_t> adj(n_vertices, 0);
    for (const auto& [i, j] : edges) {
        adj[i] |= std::uint64_t{1} << j;
        adj[j] |= std::uint64_t{1} << i;
    }
    return adj;
}

ClusterGraph make_cluster_graph(std::size_t n_vertices,
                                std::vector<std::pair<unsigned, unsigned>> edges) {
    for (auto& [i, j] : edges) {
        if (i > j) std::swap(i, j);
        if (i == j) throw std::invalid_argument("cluster graph edge is a self-loop");
        if (j >= n_vertices) throw std::out_of_range("cluster graph edge endpoint out of range");
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    ClusterGraph cg;
    cg.n_vertices = n_vertices;
    cg.edges = std::move(edges);
    return cg;
}

ClusterGraph cluster_graph(const InteractionGraph& g, const std::vector<PolymerId>& sequence) {
    if (sequence.empty()) throw std::invalid_argument("cluster graph of an empty sequence");
    if (sequence.size() > 64) throw std::length_error("polymer sequence longer than 64");
    std::vector<std::pair<unsigned, unsigned>> edges;
    for (unsigned i = 0; i < sequence.size(); ++i)
        for (unsigned j = i + 1; j < sequence.size(); ++j)
            if (!g.are_compatible(sequence[i], sequence[j])) edges.emplace_back(i, j);
    return make_cluster_graph(sequence.size(), std::move(edges));
}

bool is_connected(const ClusterGraph& cg) {
    if (cg.n_vertices == 0) return false;
    if (cg.n_vertices == 1) return true;
    const auto adj = cg.adjacency_masks();
    const std::uint64_t all = (cg.n_vertices == 64) ? ~std::uint64_t{0}
                                                    : (std::uint64_t{1} << cg.n_vertices) - 1;
    std::uint64_t reached = 1;
    for (;;) {
        std::uint64_t next = reached;
        for (std::uint64_t rest = reached; rest;) {
            const unsigned v = static_cast<unsigned>(std::countr_zero(rest));
            rest &= rest - 1;
            next |= adj[v];
        }
        if (next == reached) break;
        reached = next;
    }
    return reached == all;
}

}  // namespace polygas
