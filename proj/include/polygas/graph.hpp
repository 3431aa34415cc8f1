#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <utility>
#include <vector>

namespace polygas {

/// Dense polymer index, unique within one InteractionGraph.
using PolymerId = std::size_t;

/// Set of polymers, indexed by PolymerId.
using PolymerSet = boost::dynamic_bitset<>;

/// Finite abstract polymer system: polymers plus a symmetric incompatibility
/// relation. Self-incompatibility is implicit by definition and never stored
/// as an edge; all predicates special-case u == v.
///
/// Immutable once built (add_incompatibility is construction-time only);
/// safe for concurrent reads.
class InteractionGraph {
public:
    InteractionGraph() = default;
    explicit InteractionGraph(std::size_t n_polymers) : adj_(n_polymers, PolymerSet(n_polymers)) {}

    std::size_t n_polymers() const { return adj_.size(); }

    /// Marks u and v as incompatible. Rejects explicit self-loops: self-
    /// incompatibility is implicit, not stored.
    void add_incompatibility(PolymerId u, PolymerId v);

    /// True iff the stored edge {u,v} exists (never true for u == v).
    bool has_incompatibility(PolymerId u, PolymerId v) const;

    /// False iff u == v or {u,v} is a stored incompatibility.
    bool are_compatible(PolymerId u, PolymerId v) const;

    /// Number of stored neighbors (excluding v itself).
    std::size_t degree(PolymerId v) const;
    std::size_t max_degree() const;

    /// Neighbors of v, excluding v.
    const PolymerSet& open_neighborhood(PolymerId v) const;

    /// Neighbors of v together with v itself.
    PolymerSet closed_neighborhood(PolymerId v) const;

    PolymerSet all_polymers() const;
    std::vector<std::pair<PolymerId, PolymerId>> edges() const;

    /// Subgraph induced by `members`, vertices relabeled densely in
    /// increasing id order. Optionally reports the old id of each new vertex.
    InteractionGraph induced_subgraph(const PolymerSet& members,
                                      std::vector<PolymerId>* old_ids = nullptr) const;

    bool triangle_free() const;

private:
    std::vector<PolymerSet> adj_;

    void check_id(PolymerId v) const;
};

/// Builds a graph from explicit incompatible pairs. Throws on out-of-range
/// indices and on explicit self-pairs.
InteractionGraph build_graph(std::size_t n_polymers,
                             const std::vector<std::pair<PolymerId, PolymerId>>& incompat_pairs);

PolymerSet make_polymer_set(std::size_t n_polymers, std::initializer_list<PolymerId> members);
PolymerSet make_polymer_set(std::size_t n_polymers, const std::vector<PolymerId>& members);

/// Simple graph induced on {0..n-1} by a polymer sequence: vertex i carries
/// the i-th polymer of the sequence, and {i,j} is an edge iff the carried
/// polymers are incompatible. Repeated polymers are always joined. Vertex 0
/// acts as the root where one is needed.
struct ClusterGraph {
    std::size_t n_vertices = 0;
    std::vector<std::pair<unsigned, unsigned>> edges;  // normalized i < j, sorted

    bool has_edge(unsigned i, unsigned j) const;

    /// Per-vertex adjacency bitmask; requires n_vertices <= 64.
    std::vector<std::uint64_t> adjacency_masks() const;
};

ClusterGraph make_cluster_graph(std::size_t n_vertices,
                                std::vector<std::pair<unsigned, unsigned>> edges);

ClusterGraph cluster_graph(const InteractionGraph& g, const std::vector<PolymerId>& sequence);

/// Graph connectivity; a single vertex counts as connected.
bool is_connected(const ClusterGraph& cg);

}  // namespace polygas
