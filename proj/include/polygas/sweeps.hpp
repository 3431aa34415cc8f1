#pragma once

#include "polygas/criteria.hpp"
#include "polygas/graph.hpp"

#include <cstdint>
#include <functional>
#include <string>

namespace polygas {

struct SweepReport {
    bool ok = true;
    std::uint64_t checked = 0;
    std::uint64_t failures = 0;
    std::string counterexample;  // first failure

    void record_failure(const std::string& description) {
        ++failures;
        if (ok) counterexample = description;
        ok = false;
    }
};

/// Every graph on exactly n labeled vertices (all edge subsets).
void for_each_graph(std::size_t n_vertices, const std::function<void(const ClusterGraph&)>& fn);

/// Every connected graph on exactly n labeled vertices.
void for_each_connected_graph(std::size_t n_vertices,
                              const std::function<void(const ClusterGraph&)>& fn);

/// Signed subgraph sum vs Penrose tree count, both routes, on every
/// connected graph with up to max_vertices vertices.
SweepReport penrose_identity_sweep(std::size_t max_vertices);

/// Interval disjointness and coverage of the Penrose scheme on every
/// connected graph with up to max_vertices vertices.
SweepReport partition_scheme_sweep(std::size_t max_vertices);

/// Sign, magnitude and vanishing of ursell coefficients over all polymer
/// graphs with up to max_polymers polymers and sequences up to max_cluster.
SweepReport alternating_sign_sweep(std::size_t max_polymers, std::size_t max_cluster);

/// Pointwise ordering of the four majorants on random (graph, mu) samples;
/// on triangle-free samples the sharp and improved-Dobrushin majorants must
/// agree exactly.
SweepReport phi_ordering_sweep(std::uint64_t seed, std::size_t samples);

/// Geometric interpolation of admissible pairs stays admissible, for each
/// criterion, at lambda in {0.25, 0.5, 0.75}.
SweepReport logconvex_sweep(std::uint64_t seed, std::size_t pairs_per_condition);

/// Fixed point of one system: convergence, fixed-point residual, monotone
/// lower iterates, a nonincreasing upper chain, and the pinned-series bounds
/// rho*pi <= rho* (full-volume when the system is small enough, truncated
/// always).
SweepReport chain_sweep(CriterionKind kind, const InteractionGraph& g, const ActivityVector& rho,
                        std::size_t n_steps);

/// chain_sweep over randomized systems and activity grids until at least
/// min_converged converging instances have been checked.
SweepReport fixed_point_oracle_sweep(std::uint64_t seed, std::size_t min_converged);

/// Tree-recursion iterates against composed map iterates, all kinds,
/// k <= k_max, on randomized small systems.
SweepReport tree_equivalence_sweep(std::uint64_t seed, std::size_t systems, std::size_t k_max);

/// |ursell| <= tree bound sum for all kinds on all clusters up to
/// max_cluster polymers over all graphs with up to max_polymers polymers.
SweepReport prop6_bound_sweep(std::size_t max_polymers, std::size_t max_cluster);

}  // namespace polygas
