#include "polygas/tree_expansion.hpp"

#include "doctest.h"
#include "polygas/sweeps.hpp"
#include "polygas/ursell.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

using namespace polygas;

namespace {

const InteractionGraph kSingle = build_graph(1, {});
const InteractionGraph kK2 = build_graph(2, {{0, 1}});
const InteractionGraph kK3 = build_graph(3, {{0, 1}, {0, 2}, {1, 2}});

std::vector<PolymerId> repeat(PolymerId v, std::size_t n) { return std::vector<PolymerId>(n, v); }

}  // namespace

TEST_CASE("vertex admissibility") {
    for (auto kind : {CriterionKind::KoteckyPreiss, CriterionKind::Dobrushin,
                      CriterionKind::ImprovedDobrushin, CriterionKind::FernandezProcacci})
        CHECK(vertex_function(kind, kSingle, 0, {}) == 1);

    // two copies of an incompatible neighbor: fails the pairwise-compatibility
    // rule but not the repetition-free ones
    const std::vector<PolymerId> twice{1, 1};
    CHECK(vertex_function(CriterionKind::FernandezProcacci, kK2, 0, twice) == 0);
    CHECK(vertex_function(CriterionKind::Dobrushin, kK2, 0, twice) == 0);
    CHECK(vertex_function(CriterionKind::KoteckyPreiss, kK2, 0, twice) == 1);

    // children must be incompatible with the vertex
    const auto path = build_graph(3, {{0, 1}, {1, 2}});
    const std::vector<PolymerId> far{2};
    CHECK(vertex_function(CriterionKind::KoteckyPreiss, path, 0, far) == 0);

    // the vertex's own polymer is ruled out for two or more children only
    const std::vector<PolymerId> self_once{0};
    const std::vector<PolymerId> self_and_other{0, 1};
    CHECK(vertex_function(CriterionKind::ImprovedDobrushin, kK2, 0, self_once) == 1);
    CHECK(vertex_function(CriterionKind::ImprovedDobrushin, kK2, 0, self_and_other) == 0);
    CHECK(vertex_function(CriterionKind::Dobrushin, kK2, 0, self_and_other) == 1);
}

TEST_CASE("tree bound sums on small clusters") {
    for (auto kind : {CriterionKind::KoteckyPreiss, CriterionKind::Dobrushin,
                      CriterionKind::ImprovedDobrushin, CriterionKind::FernandezProcacci}) {
        CHECK(tree_bound_sum(kind, kSingle, {0}) == 1);
        CHECK(tree_bound_sum(kind, kK2, {0, 1}) == 1);
    }
    // on a 3-cluster of mutually incompatible polymers only the two chains
    // survive the compatibility rule, matching |ursell| exactly
    CHECK(tree_bound_sum(CriterionKind::FernandezProcacci, kK3, {0, 1, 2}) == 2);
    CHECK(std::abs(ursell_coefficient(kK3, {0, 1, 2})) == 2);
}

TEST_CASE("tree bound equals |ursell| on complete clusters under the sharp rule") {
    for (std::size_t size = 2; size <= 5; ++size) {
        const auto seq = repeat(0, size);
        const auto bound = tree_bound_sum(CriterionKind::FernandezProcacci, kSingle, seq);
        CHECK(bound == std::abs(ursell_coefficient(kSingle, seq)));
    }
}

TEST_CASE("tree bound dominates |ursell| on small systems") {
    const auto report = prop6_bound_sweep(3, 4);
    INFO(report.counterexample);
    CHECK(report.ok);
}

TEST_CASE("planar multiplicities") {
    PlanarRootedTree trivial;
    CHECK(planar_multiplicity(trivial) == 1);

    PlanarRootedTree fork;
    fork.children.resize(2);
    CHECK(fork.n_vertices() == 3);
    CHECK(planar_multiplicity(fork) == 1);  // 2!/2!

    PlanarRootedTree chain;
    chain.children.resize(1);
    chain.children[0].children.resize(1);
    CHECK(planar_multiplicity(chain) == 2);  // 2!/(1! 1!)
}

TEST_CASE("planar shapes are counted by Catalan numbers") {
    const std::size_t catalan[] = {1, 1, 2, 5, 14};
    for (std::size_t n = 0; n <= 4; ++n) CHECK(enumerate_planar_shapes(n).size() == catalan[n]);
}

TEST_CASE("labeled tree counts") {
    CHECK(labeled_rooted_tree_count(0) == 1);
    CHECK(labeled_rooted_tree_count(1) == 1);
    CHECK(labeled_rooted_tree_count(2) == 3);
    CHECK(labeled_rooted_tree_count(3) == 16);
    CHECK(labeled_rooted_tree_count(8) == 4782969);
    CHECK_THROWS_AS(labeled_rooted_tree_count(9), std::length_error);
}

TEST_CASE("planar multiplicities convert shape sums to labeled-tree sums") {
    // sum of beta_t over shapes with n vertices equals the labeled count
    for (std::size_t n = 1; n <= 4; ++n) {
        std::int64_t total = 0;
        for (const auto& shape : enumerate_planar_shapes(n)) total += planar_multiplicity(shape);
        CHECK(total == labeled_rooted_tree_count(n));
    }

    // and the identity survives generic per-branching weights
    const double weights[] = {1.0, 0.37, 1.91, 0.23, 3.07};
    for (std::size_t n = 1; n <= 4; ++n) {
        double planar_sum = 0.0;
        std::function<double(const PlanarRootedTree&)> shape_weight =
            [&](const PlanarRootedTree& t) {
                double w = weights[t.children.size()];
                for (const auto& c : t.children) w *= shape_weight(c);
                return w;
            };
        for (const auto& shape : enumerate_planar_shapes(n))
            planar_sum += static_cast<double>(planar_multiplicity(shape)) * shape_weight(shape);

        // labeled side: every acyclic parent assignment {1..n} -> {0..n}
        // rooted at 0 is a labeled rooted tree; n <= 4 keeps this tiny
        double labeled_sum = 0.0;
        std::vector<unsigned> parent(n + 1, 0);
        std::function<void(std::size_t)> assign = [&](std::size_t v) {
            if (v == n + 1) {
                for (std::size_t u = 1; u <= n; ++u) {
                    std::size_t w = u, hops = 0;
                    while (w != 0 && hops <= n + 1) w = parent[w], ++hops;
                    if (hops > n + 1) return;  // cycle away from the root
                }
                std::vector<std::size_t> branching(n + 1, 0);
                for (std::size_t u = 1; u <= n; ++u) ++branching[parent[u]];
                double w = 1.0;
                for (std::size_t u = 0; u <= n; ++u) w *= weights[branching[u]];
                labeled_sum += w;
                return;
            }
            for (unsigned p = 0; p <= n; ++p) {
                if (p == v) continue;
                parent[v] = p;
                assign(v + 1);
            }
        };
        assign(1);
        CHECK(planar_sum == doctest::Approx(labeled_sum).epsilon(1e-12));
    }
}

TEST_CASE("tree iterates reproduce the map") {
    // zero applications return the weights unchanged
    const ActivityVector mu{0.7};
    CHECK(iterate_via_trees(CriterionKind::FernandezProcacci, kSingle, {0.5}, 0, mu) == mu);

    // two applications on the one-polymer system
    const auto two = iterate_via_trees(CriterionKind::FernandezProcacci, kSingle, {0.5}, 2, {0.5});
    CHECK(two[0] == doctest::Approx(0.875));

    // one application of zero weights gives back rho
    const auto one = iterate_via_trees(CriterionKind::FernandezProcacci, kSingle, {0.5}, 1, {0.0});
    CHECK(one[0] == doctest::Approx(0.5));
}

TEST_CASE("tree iterates equal composed map iterates") {
    const auto report = tree_equivalence_sweep(13, 40, 3);
    INFO(report.counterexample);
    CHECK(report.ok);
}

TEST_CASE("iterates from an admissible weight sandwich the remainder") {
    // with T(mu) <= mu, subtracting the from-below iterates isolates the
    // remainder carried by the deepest generation; it shrinks when mu is
    // replaced by T(mu) and when the depth grows
    const auto g = build_graph(2, {{0, 1}});
    const ActivityVector rho{0.1, 0.1};
    const ActivityVector mu{0.35, 0.35};
    REQUIRE(condition_holds(CriterionKind::FernandezProcacci, g, rho, mu));
    const auto t_mu = t_map(CriterionKind::FernandezProcacci, g, rho, mu);

    const auto from_mu = tree_iterates(CriterionKind::FernandezProcacci, g, rho, mu, 4);
    const auto from_t_mu = tree_iterates(CriterionKind::FernandezProcacci, g, rho, t_mu, 4);
    const auto from_rho = tree_iterates(CriterionKind::FernandezProcacci, g, rho, rho, 4);

    for (std::size_t k = 2; k <= 4; ++k)
        for (PolymerId v = 0; v < 2; ++v) {
            const double r_k = from_mu[k][v] - from_rho[k - 1][v];
            const double r_km1_t = from_t_mu[k - 1][v] - from_rho[k - 2][v];
            const double r_km1 = from_mu[k - 1][v] - from_rho[k - 2][v];
            CHECK(r_k <= r_km1_t + 1e-12);
            CHECK(r_km1_t <= r_km1 + 1e-12);
        }
}

TEST_CASE("kotecky-preiss branching truncation is flagged when lossy") {
    TreeIterateOptions opt;
    opt.s_max = 3;
    // large weights make the dropped branching orders visible
    CHECK_THROWS_AS(
        iterate_via_trees(CriterionKind::KoteckyPreiss, kSingle, {0.9}, 2, {2.0}, opt),
        std::length_error);
    // small weights keep the tail below tolerance at the default cutoff
    const auto fine = iterate_via_trees(CriterionKind::KoteckyPreiss, kSingle, {0.05}, 2, {0.1});
    CHECK(fine[0] == doctest::Approx(0.05 * std::exp(0.05 * std::exp(0.1))).epsilon(1e-10));
}
