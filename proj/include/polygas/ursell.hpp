#pragma once

#include "polygas/gas.hpp"
#include "polygas/graph.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace polygas {

/// Labeled tree on {0..n-1} rooted at 0. parent[v] is defined for v >= 1;
/// depth[v] is the tree distance to the root.
struct RootedLabeledTree {
    std::size_t n_vertices = 0;
    std::vector<unsigned> parent;
    std::vector<unsigned> depth;

    std::vector<std::pair<unsigned, unsigned>> edges() const;
};

struct UrsellCaps {
    std::size_t max_css_edges = 24;       // brute-force edge-subset sweep
    std::size_t max_tree_vertices = 8;    // labeled-tree enumeration
    std::size_t max_dp_vertices = 16;     // vertex-subset recursion
    std::size_t max_order = 12;           // truncation order for series sums
    std::uint64_t max_tuple_work = 80'000'000;  // sequence-sweep budget
};

/// Sum of (-1)^(number of edges) over all connected spanning subgraphs,
/// enumerated edge subset by edge subset. Requires a connected input.
std::int64_t css_signed_sum(const ClusterGraph& cg, const UrsellCaps& caps = {});

/// Same sum via a recursion over vertex subsets; handles graphs far beyond
/// the edge-subset cap (returns 0 for disconnected input).
std::int64_t css_signed_sum_dp(const ClusterGraph& cg, const UrsellCaps& caps = {});

/// Truncated (Ursell) coefficient of a polymer sequence: 1 for a single
/// polymer, the signed connected-spanning-subgraph sum when the induced
/// cluster graph is connected, 0 otherwise.
std::int64_t ursell_coefficient(const InteractionGraph& g, const std::vector<PolymerId>& sequence,
                                const UrsellCaps& caps = {});

/// All labeled spanning trees of cg rooted at vertex 0, generated from
/// Pruefer sequences of the complete graph and filtered to cg's edges.
std::vector<RootedLabeledTree> enumerate_rooted_spanning_trees(const ClusterGraph& cg,
                                                               const UrsellCaps& caps = {});

/// Penrose closure of a spanning tree: the tree plus every non-tree edge of
/// cg that either joins two vertices of the same generation, or joins a
/// vertex to a previous-generation vertex indexed below its parent.
ClusterGraph penrose_closure(const RootedLabeledTree& tau, const ClusterGraph& cg);

/// Number of spanning trees fixed by the Penrose closure. Equals the
/// absolute value of the signed connected-spanning-subgraph sum.
std::int64_t penrose_tree_count(const ClusterGraph& cg, const UrsellCaps& caps = {});

struct PartitionSchemeReport {
    bool ok = false;
    std::size_t n_css = 0;
    std::size_t n_trees = 0;
    std::vector<std::string> violations;
};

/// Checks that the intervals [tau, closure(tau)] over all spanning trees are
/// pairwise disjoint and cover every connected spanning subgraph.
PartitionSchemeReport verify_partition_scheme(const ClusterGraph& cg, const UrsellCaps& caps = {});

/// Truncation of the pinned positive-term series at g0:
/// 1 + sum over orders n <= n_max of (1/n!) sum over polymer n-tuples of
/// |ursell(g0, tuple)| times the activity product. Nondecreasing in n_max.
double pi_truncated(const InteractionGraph& g, PolymerId g0, const ActivityVector& rho,
                    std::size_t n_max, const UrsellCaps& caps = {});

/// Truncation of the log-partition-function series over a region: sum over
/// orders n <= n_max of (1/n!) sum over region n-tuples of the signed
/// ursell coefficient times the activity product.
double mayer_log_truncated(const InteractionGraph& g, const PolymerSet& region,
                           const ActivityVector& z, std::size_t n_max,
                           const UrsellCaps& caps = {});

}  // namespace polygas
