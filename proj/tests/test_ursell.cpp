#include "polygas/ursell.hpp"

#include "doctest.h"
#include "polygas/sweeps.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

using namespace polygas;

namespace {

const InteractionGraph kSingle = build_graph(1, {});
const InteractionGraph kK2 = build_graph(2, {{0, 1}});

ClusterGraph k3() { return make_cluster_graph(3, {{0, 1}, {0, 2}, {1, 2}}); }
ClusterGraph path3() { return make_cluster_graph(3, {{0, 1}, {1, 2}}); }

std::int64_t signed_factorial(std::size_t n) {
    // ursell value of a complete cluster on n+1 vertices: (-1)^n n!
    std::int64_t f = 1;
    for (std::size_t i = 2; i <= n; ++i) f *= static_cast<std::int64_t>(i);
    return (n % 2 == 0) ? f : -f;
}

}  // namespace

TEST_CASE("signed subgraph sums on small graphs") {
    CHECK(css_signed_sum(make_cluster_graph(1, {})) == 1);
    CHECK(css_signed_sum(make_cluster_graph(2, {{0, 1}})) == -1);
    CHECK(css_signed_sum(k3()) == 2);  // three spanning paths, minus the triangle
    CHECK_THROWS_AS(css_signed_sum(make_cluster_graph(2, {})), std::invalid_argument);
}

TEST_CASE("both signed-sum routes agree on every connected graph up to 5 vertices") {
    for (std::size_t n = 1; n <= 5; ++n)
        for_each_connected_graph(n, [&](const ClusterGraph& cg) {
            CHECK(css_signed_sum(cg) == css_signed_sum_dp(cg));
        });
}

TEST_CASE("ursell coefficients") {
    CHECK(ursell_coefficient(kSingle, {0}) == 1);
    CHECK(ursell_coefficient(kK2, {0, 1}) == -1);
    CHECK(ursell_coefficient(kSingle, {0, 0, 0}) == 2);
    for (std::size_t len = 1; len <= 6; ++len)
        CHECK(ursell_coefficient(kSingle, std::vector<PolymerId>(len, 0)) ==
              signed_factorial(len - 1));
    // disconnected cluster
    const auto free2 = build_graph(2, {});
    CHECK(ursell_coefficient(free2, {0, 1}) == 0);
}

TEST_CASE("ursell coefficients are permutation symmetric") {
    const auto path = build_graph(3, {{0, 1}, {1, 2}});
    std::vector<PolymerId> seq{0, 1, 2, 2};
    std::sort(seq.begin(), seq.end());
    const auto base = ursell_coefficient(path, seq);
    do {
        CHECK(ursell_coefficient(path, seq) == base);
    } while (std::next_permutation(seq.begin(), seq.end()));
}

TEST_CASE("rooted spanning tree enumeration") {
    CHECK(enumerate_rooted_spanning_trees(make_cluster_graph(2, {{0, 1}})).size() == 1);
    CHECK(enumerate_rooted_spanning_trees(k3()).size() == 3);  // Cayley: 3^(3-2)
    const auto only = enumerate_rooted_spanning_trees(path3());
    REQUIRE(only.size() == 1);
    CHECK(only[0].depth == std::vector<unsigned>{0, 1, 2});
    CHECK(only[0].parent[1] == 0);
    CHECK(only[0].parent[2] == 1);
}

TEST_CASE("penrose closure") {
    const auto triangle = k3();

    // star at the root: the missing edge joins two first-generation vertices
    RootedLabeledTree star;
    star.n_vertices = 3;
    star.parent = {0, 0, 0};
    star.depth = {0, 1, 1};
    CHECK(penrose_closure(star, triangle).edges.size() == 3);

    // path: the missing edge spans two generations and is never added
    RootedLabeledTree chain;
    chain.n_vertices = 3;
    chain.parent = {0, 0, 1};
    chain.depth = {0, 1, 2};
    CHECK(penrose_closure(chain, triangle).edges == path3().edges);

    // nothing to add when the tree already carries every edge
    const auto path = path3();
    const auto trees = enumerate_rooted_spanning_trees(path);
    CHECK(penrose_closure(trees[0], path).edges == path.edges);

    RootedLabeledTree not_subgraph;
    not_subgraph.n_vertices = 3;
    not_subgraph.parent = {0, 0, 0};
    not_subgraph.depth = {0, 1, 1};
    CHECK_THROWS_AS(penrose_closure(not_subgraph, path3()), std::invalid_argument);
}

TEST_CASE("penrose tree counts") {
    CHECK(penrose_tree_count(make_cluster_graph(1, {})) == 1);
    CHECK(penrose_tree_count(k3()) == 2);
    CHECK(penrose_tree_count(path3()) == 1);
}

TEST_CASE("partition scheme on small graphs") {
    const auto triangle_report = verify_partition_scheme(k3());
    CHECK(triangle_report.ok);
    CHECK(triangle_report.n_css == 4);
    CHECK(triangle_report.n_trees == 3);

    const auto edge_report = verify_partition_scheme(make_cluster_graph(2, {{0, 1}}));
    CHECK(edge_report.ok);
    CHECK(edge_report.n_css == 1);
    CHECK(edge_report.n_trees == 1);
}

TEST_CASE("the cross-generation closure rule matters on a 4-cycle") {
    // cycle 0-1-3-2-0: two of its four spanning trees have a non-tree edge
    // between consecutive generations, and exactly one of them must absorb
    // the full graph for the intervals to stay disjoint
    const auto cycle = make_cluster_graph(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
    CHECK(css_signed_sum(cycle) == -3);
    CHECK(penrose_tree_count(cycle) == 3);
    const auto report = verify_partition_scheme(cycle);
    CHECK(report.ok);
    CHECK(report.n_css == 5);
    CHECK(report.n_trees == 4);
}

TEST_CASE("penrose identity and partitionability up to 5 vertices") {
    const auto identity = penrose_identity_sweep(5);
    CHECK(identity.ok);
    INFO(identity.counterexample);
    CHECK(identity.failures == 0);
    const auto partition = partition_scheme_sweep(5);
    INFO(partition.counterexample);
    CHECK(partition.ok);
}

TEST_CASE("alternating signs on small systems") {
    const auto report = alternating_sign_sweep(3, 4);
    INFO(report.counterexample);
    CHECK(report.ok);
}

TEST_CASE("truncated pinned series") {
    CHECK(pi_truncated(kSingle, 0, {0.0}, 5) == 1.0);
    // |ursell| of n copies is (n-1)!, so orders are rho^n and the partial sums
    // approach 1/(1-rho)
    CHECK(pi_truncated(kSingle, 0, {0.5}, 3) == doctest::Approx(1.875));
    CHECK(pi_truncated(kSingle, 0, {0.5}, 12) == doctest::Approx(2.0).epsilon(5e-4));
    double previous = 0.0;
    for (std::size_t n_max = 0; n_max <= 6; ++n_max) {
        const double value = pi_truncated(kSingle, 0, {0.5}, n_max);
        CHECK(value >= previous);
        previous = value;
    }
}

TEST_CASE("truncated pinned series approaches the finite-volume series") {
    const auto path = build_graph(3, {{0, 1}, {1, 2}});
    const ActivityVector rho(3, 0.05);
    const double truncated = pi_truncated(path, 1, rho, 10);
    const double full = pi_volume(path, path.all_polymers(), 1, rho);
    CHECK(truncated == doctest::Approx(full).epsilon(1e-8));
    CHECK(truncated <= full + 1e-12);
}

TEST_CASE("truncated log series") {
    const PolymerSet lone = kSingle.all_polymers();
    CHECK(mayer_log_truncated(kSingle, lone, {0.0}, 4) == 0.0);
    CHECK(mayer_log_truncated(kSingle, lone, {0.5}, 2) == doctest::Approx(0.375));
    // approaches log Xi as the order grows
    const auto path = build_graph(3, {{0, 1}, {1, 2}});
    const ActivityVector z(3, 0.08);
    const double exact = std::log(partition_function(path, path.all_polymers(), z));
    double previous_error = 1.0;
    for (std::size_t n_max = 2; n_max <= 8; n_max += 2) {
        const double error =
            std::abs(mayer_log_truncated(path, path.all_polymers(), z, n_max) - exact);
        CHECK(error < previous_error + 1e-15);
        previous_error = error;
    }
    CHECK(previous_error < 1e-6);
}

TEST_CASE("series sweeps respect the work budget") {
    UrsellCaps caps;
    caps.max_tuple_work = 10;
    CHECK_THROWS_AS(pi_truncated(build_graph(3, {}), 0, ActivityVector(3, 0.1), 4, caps),
                    std::length_error);
}
