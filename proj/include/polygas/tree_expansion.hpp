#pragma once

#include "polygas/criteria.hpp"
#include "polygas/gas.hpp"
#include "polygas/graph.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace polygas {

/// Per-vertex admissibility of a tree vertex carrying `root` with the given
/// child polymers, by criterion:
///   KoteckyPreiss       children incompatible with root
///   Dobrushin           ... and pairwise distinct
///   ImprovedDobrushin   ... and avoiding root itself when there are >= 2
///   FernandezProcacci   ... and pairwise compatible
/// No children is admissible for every kind.
int vertex_function(CriterionKind kind, const InteractionGraph& g, PolymerId root,
                    std::span<const PolymerId> children);

/// Sum over all labeled trees on {0..n} rooted at 0 of the product of vertex
/// functions, for the polymer sequence (g0..gn). Dominates the absolute
/// ursell coefficient of the sequence for every kind.
std::int64_t tree_bound_sum(CriterionKind kind, const InteractionGraph& g,
                            const std::vector<PolymerId>& sequence, std::size_t max_order = 6);

/// Ordered rooted tree; permutations of sibling subtrees count as different
/// trees. Branching factors are implicit in the nesting.
struct PlanarRootedTree {
    std::vector<PlanarRootedTree> children;

    std::size_t n_vertices() const;  // including the root
};

/// Number of ways of labeling the non-root vertices consistently with the
/// sibling order: |V_t|! / product of s_v! over all vertices.
std::int64_t planar_multiplicity(const PlanarRootedTree& t);

/// All planar shapes with exactly n_nonroot vertices below the root.
std::vector<PlanarRootedTree> enumerate_planar_shapes(std::size_t n_nonroot);

/// (n+1)^(n-1): labeled trees on {0..n} rooted at 0. Requires n <= 8.
std::int64_t labeled_rooted_tree_count(std::size_t n);

struct TreeIterateOptions {
    /// Branching cutoff per vertex; 0 means automatic (the polymer count for
    /// the kinds whose children are distinct, 12 for KoteckyPreiss).
    std::size_t s_max = 0;
    /// Relative size allowed for the first omitted branching order before
    /// the truncation is reported as lossy.
    double truncation_tol = 1e-12;
    std::uint64_t max_work = 400'000'000;
};

/// All map iterates T^0(mu)..T^k_max(mu) computed by the generation-by-
/// generation tree recursion (not by composing t_map). Index k of the result
/// is the k-fold iterate; index 0 is mu itself.
std::vector<ActivityVector> tree_iterates(CriterionKind kind, const InteractionGraph& g,
                                          const ActivityVector& rho, const ActivityVector& mu,
                                          std::size_t k_max, const TreeIterateOptions& opt = {});

/// The k-fold iterate via the tree recursion.
ActivityVector iterate_via_trees(CriterionKind kind, const InteractionGraph& g,
                                 const ActivityVector& rho, std::size_t k,
                                 const ActivityVector& mu, const TreeIterateOptions& opt = {});

}  // namespace polygas
