#include "polygas/sweeps.hpp"

#include "polygas/gas.hpp"
#include "polygas/tree_expansion.hpp"
#include "polygas/ursell.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace polygas {

namespace {

std::vector<std::pair<unsigned, unsigned>> complete_edge_list(std::size_t n) {
    std::vector<std::pair<unsigned, unsigned>> edges;
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    return edges;
}

InteractionGraph to_interaction(const ClusterGraph& cg) {
    InteractionGraph g(cg.n_vertices);
    for (const auto& [u, v] : cg.edges) g.add_incompatibility(u, v);
    return g;
}

std::string describe(const ClusterGraph& cg) {
    std::ostringstream out;
    out << cg.n_vertices << " vertices, edges {";
    for (std::size_t e = 0; e < cg.edges.size(); ++e)
        out << (e ? "," : "") << cg.edges[e].first << "-" << cg.edges[e].second;
    out << "}";
    return out.str();
}

InteractionGraph random_interaction(std::mt19937_64& rng, std::size_t n, double p) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    InteractionGraph g(n);
    for (PolymerId u = 0; u < n; ++u)
        for (PolymerId v = u + 1; v < n; ++v)
            if (coin(rng) < p) g.add_incompatibility(u, v);
    return g;
}

InteractionGraph random_tree_interaction(std::mt19937_64& rng, std::size_t n) {
    InteractionGraph g(n);
    for (PolymerId v = 1; v < n; ++v)
        g.add_incompatibility(v, rng() % v);
    return g;
}

ActivityVector random_vector(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
    std::uniform_real_distribution<double> u(lo, hi);
    ActivityVector out(n);
    for (auto& x : out) x = u(rng);
    return out;
}

}  // namespace

void for_each_graph(std::size_t n_vertices, const std::function<void(const ClusterGraph&)>& fn) {
    const auto all_edges = complete_edge_list(n_vertices);
    const std::uint32_t masks = std::uint32_t{1} << all_edges.size();
    for (std::uint32_t mask = 0; mask < masks; ++mask) {
        std::vector<std::pair<unsigned, unsigned>> edges;
        for (std::size_t e = 0; e < all_edges.size(); ++e)
            if (mask & (std::uint32_t{1} << e)) edges.push_back(all_edges[e]);
        fn(make_cluster_graph(n_vertices, std::move(edges)));
    }
}

void for_each_connected_graph(std::size_t n_vertices,
                              const std::function<void(const ClusterGraph&)>& fn) {
    for_each_graph(n_vertices, [&](const ClusterGraph& cg) {
        if (is_connected(cg)) fn(cg);
    });
}

SweepReport penrose_identity_sweep(std::size_t max_vertices) {
    SweepReport report;
    for (std::size_t n = 1; n <= max_vertices; ++n) {
        for_each_connected_graph(n, [&](const ClusterGraph& cg) {
            ++report.checked;
            const std::int64_t brute = css_signed_sum(cg);
            const std::int64_t dp = css_signed_sum_dp(cg);
            const std::int64_t trees = penrose_tree_count(cg);
            const std::int64_t sign = (n % 2 == 1) ? 1 : -1;
            if (brute != dp)
                report.record_failure("subset-recursion mismatch on " + describe(cg));
            else if (brute != sign * trees || trees < 1)
                report.record_failure("penrose identity fails on " + describe(cg) + ": css=" +
                                      std::to_string(brute) + " trees=" + std::to_string(trees));
        });
    }
    return report;
}

SweepReport partition_scheme_sweep(std::size_t max_vertices) {
    SweepReport report;
    for (std::size_t n = 1; n <= max_vertices; ++n) {
        for_each_connected_graph(n, [&](const ClusterGraph& cg) {
            ++report.checked;
            const auto scheme = verify_partition_scheme(cg);
            if (!scheme.ok)
                report.record_failure("partition scheme fails on " + describe(cg) + ": " +
                                      scheme.violations.front());
        });
    }
    return report;
}

SweepReport alternating_sign_sweep(std::size_t max_polymers, std::size_t max_cluster) {
    SweepReport report;
    for (std::size_t n = 1; n <= max_polymers; ++n) {
        for_each_graph(n, [&](const ClusterGraph& shape) {
            const InteractionGraph g = to_interaction(shape);
            std::set<std::vector<PolymerId>> seen;
            std::vector<PolymerId> seq;
            for (std::size_t len = 1; len <= max_cluster; ++len) {
                std::vector<std::size_t> idx(len, 0);
                for (;;) {
                    seq.assign(idx.begin(), idx.end());
                    std::sort(seq.begin(), seq.end());
                    if (seen.insert(seq).second) {
                        ++report.checked;
                        const ClusterGraph cg = cluster_graph(g, seq);
                        const std::int64_t value = css_signed_sum_dp(cg);
                        if (is_connected(cg)) {
                            const std::int64_t sign = (len % 2 == 1) ? 1 : -1;
                            if (value * sign < 1)
                                report.record_failure(
                                    "sign or magnitude fails for a cluster of " +
                                    std::to_string(len) + " on " + describe(shape) +
                                    ": value=" + std::to_string(value));
                        } else if (value != 0) {
                            report.record_failure("nonzero value on a disconnected cluster over " +
                                                  describe(shape));
                        }
                        if (cg.edges.size() <= 12) {
                            // cross-check against the edge-subset route
                            const std::int64_t brute =
                                is_connected(cg) ? css_signed_sum(cg) : 0;
                            if (brute != value)
                                report.record_failure("subset routes disagree on " +
                                                      describe(cg));
                        }
                    }
                    std::size_t pos = 0;
                    while (pos < len && idx[pos] + 1 == n) idx[pos++] = 0;
                    if (pos == len) break;
                    ++idx[pos];
                }
            }
        });
    }
    return report;
}

SweepReport phi_ordering_sweep(std::uint64_t seed, std::size_t samples) {
    SweepReport report;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> size_dist(1, 8);
    std::uniform_real_distribution<double> prob(0.15, 0.85);
    for (std::size_t i = 0; i < samples; ++i) {
        const std::size_t n = size_dist(rng);
        const bool want_tree = (i % 2 == 1) && n >= 2;
        const InteractionGraph g = want_tree ? random_tree_interaction(rng, n)
                                             : random_interaction(rng, n, prob(rng));
        const ActivityVector mu = random_vector(rng, n, 0.0, 1.5);
        const bool tri_free = g.triangle_free();
        for (PolymerId v = 0; v < n; ++v) {
            ++report.checked;
            const double fp = phi(CriterionKind::FernandezProcacci, g, v, mu);
            const double imp = phi(CriterionKind::ImprovedDobrushin, g, v, mu);
            const double dob = phi(CriterionKind::Dobrushin, g, v, mu);
            const double kp = phi(CriterionKind::KoteckyPreiss, g, v, mu);
            const double slack = 1e-13;
            if (fp > imp * (1 + slack) || imp > dob * (1 + slack) || dob > kp * (1 + slack)) {
                report.record_failure("majorant ordering fails at polymer " + std::to_string(v));
                continue;
            }
            if (tri_free && fp != imp)
                report.record_failure("triangle-free majorants differ at polymer " +
                                      std::to_string(v));
        }
    }
    return report;
}

SweepReport logconvex_sweep(std::uint64_t seed, std::size_t pairs_per_condition) {
    SweepReport report;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> size_dist(2, 6);
    std::uniform_real_distribution<double> prob(0.2, 0.9);
    std::uniform_real_distribution<double> head(0.05, 0.95);
    const CriterionKind kinds[] = {CriterionKind::KoteckyPreiss, CriterionKind::Dobrushin,
                                   CriterionKind::ImprovedDobrushin,
                                   CriterionKind::FernandezProcacci};
    for (CriterionKind kind : kinds) {
        for (std::size_t i = 0; i < pairs_per_condition; ++i) {
            const std::size_t n = size_dist(rng);
            const InteractionGraph g = random_interaction(rng, n, prob(rng));
            // admissible by construction: rho = u * mu / phi(mu)
            const auto admissible = [&](const ActivityVector& mu) {
                ActivityVector rho(n);
                for (PolymerId v = 0; v < n; ++v)
                    rho[v] = head(rng) * mu[v] / phi(kind, g, v, mu);
                return rho;
            };
            const ActivityVector mu = random_vector(rng, n, 0.05, 1.0);
            const ActivityVector mu2 = random_vector(rng, n, 0.05, 1.0);
            const ActivityVector rho = admissible(mu);
            const ActivityVector rho2 = admissible(mu2);
            for (double lambda : {0.25, 0.5, 0.75}) {
                ++report.checked;
                if (!geometric_interpolation_check(kind, g, rho, mu, rho2, mu2, lambda))
                    report.record_failure(std::string("geometric interpolant escapes the ") +
                                          criterion_name(kind) + " region at lambda=" +
                                          std::to_string(lambda));
            }
        }
    }
    return report;
}

SweepReport chain_sweep(CriterionKind kind, const InteractionGraph& g, const ActivityVector& rho,
                        std::size_t n_steps) {
    SweepReport report;
    const std::size_t n = g.n_polymers();
    const double tol = 1e-9;

    const auto fp = fixed_point(kind, g, rho);
    ++report.checked;
    if (!fp.converged) {
        report.record_failure(fp.diverged ? "iteration diverged" : "iteration hit max_iter");
        return report;
    }
    const ActivityVector& star = fp.rho_star;

    // fixed-point residual
    {
        ++report.checked;
        const ActivityVector mapped = t_map(kind, g, rho, star);
        double residual = 0.0;
        for (PolymerId v = 0; v < n; ++v) residual = std::max(residual, std::abs(mapped[v] - star[v]));
        if (residual > tol)
            report.record_failure("fixed-point residual " + std::to_string(residual));
    }

    // monotone lower iterates
    {
        ++report.checked;
        ActivityVector current = rho;
        for (std::size_t k = 0; k < std::min<std::size_t>(n_steps, 6); ++k) {
            const ActivityVector next = t_map(kind, g, rho, current);
            for (PolymerId v = 0; v < n; ++v) {
                if (next[v] < current[v] - 1e-12 * (1.0 + current[v]))
                    report.record_failure("lower iterates not increasing");
                if (next[v] > star[v] + tol)
                    report.record_failure("lower iterate overshoots the fixed point");
            }
            current = next;
        }
    }

    // nonincreasing upper chain pinned above the fixed point
    {
        ++report.checked;
        ActivityVector mu;
        bool found = false;
        for (double c : {1.0, 1.0 + 1e-9, 1.001, 1.01, 1.1, 2.0}) {
            mu = star;
            for (auto& x : mu) x *= c;
            if (condition_holds(kind, g, rho, mu)) {
                found = true;
                break;
            }
        }
        if (!found) {
            report.record_failure("no admissible upper weight found");
        } else {
            ActivityVector prev = mu;
            for (const auto& link : bound_chain(kind, g, rho, mu, n_steps)) {
                for (PolymerId v = 0; v < n; ++v) {
                    if (link[v] > prev[v] + 1e-12 * (1.0 + prev[v]))
                        report.record_failure("upper chain not nonincreasing");
                    if (link[v] < star[v] - tol)
                        report.record_failure("upper chain undershoots the fixed point");
                }
                prev = link;
            }
        }
    }

    // pinned-series bounds: rho * Pi <= rho*
    if (kind == CriterionKind::FernandezProcacci) {
        if (n <= 16) {
            ++report.checked;
            const PolymerSet all = g.all_polymers();
            for (PolymerId v = 0; v < n; ++v) {
                const double pi = pi_volume(g, all, v, rho);
                if (rho[v] * pi > star[v] + tol)
                    report.record_failure("rho*pi exceeds the fixed point at polymer " +
                                          std::to_string(v));
            }
        }
        {
            ++report.checked;
            for (PolymerId v = 0; v < n; ++v) {
                const double pi3 = pi_truncated(g, v, rho, 3);
                if (rho[v] * pi3 > star[v] + tol)
                    report.record_failure("rho*pi_truncated exceeds the fixed point at polymer " +
                                          std::to_string(v));
            }
        }
    }
    return report;
}

SweepReport fixed_point_oracle_sweep(std::uint64_t seed, std::size_t min_converged) {
    SweepReport report;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> size_dist(2, 8);
    std::uniform_real_distribution<double> prob(0.2, 0.8);

    std::size_t converged = 0;
    std::size_t attempts = 0;
    const std::size_t max_attempts = 60 * min_converged;
    while (converged < min_converged && attempts < max_attempts) {
        ++attempts;
        const std::size_t n = size_dist(rng);
        const InteractionGraph g = random_interaction(rng, n, prob(rng));
        const double scale = 1.0 / static_cast<double>(g.max_degree() + 2);
        for (double t : {0.25, 0.5, 0.8}) {
            ActivityVector rho = random_vector(rng, n, 0.5, 1.0);
            for (auto& x : rho) x *= t * scale;
            if (!fixed_point(CriterionKind::FernandezProcacci, g, rho).converged) continue;
            const SweepReport one = chain_sweep(CriterionKind::FernandezProcacci, g, rho, 8);
            report.checked += one.checked;
            if (!one.ok) {
                report.failures += one.failures;
                if (report.ok) report.counterexample = one.counterexample;
                report.ok = false;
            }
            ++converged;
        }
    }
    if (converged < min_converged)
        report.record_failure("only " + std::to_string(converged) +
                              " converging systems found out of " +
                              std::to_string(min_converged) + " requested");
    return report;
}

SweepReport tree_equivalence_sweep(std::uint64_t seed, std::size_t systems, std::size_t k_max) {
    SweepReport report;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> size_dist(1, 4);
    const double probs[] = {0.3, 0.6, 1.0};
    const CriterionKind kinds[] = {CriterionKind::KoteckyPreiss, CriterionKind::Dobrushin,
                                   CriterionKind::ImprovedDobrushin,
                                   CriterionKind::FernandezProcacci};
    for (std::size_t i = 0; i < systems; ++i) {
        const std::size_t n = size_dist(rng);
        const InteractionGraph g = random_interaction(rng, n, probs[i % 3]);
        const ActivityVector rho = random_vector(rng, n, 0.01, 0.04);
        const ActivityVector mu = random_vector(rng, n, 0.02, 0.1);
        for (CriterionKind kind : kinds) {
            const auto via_trees = tree_iterates(kind, g, rho, mu, k_max);
            ActivityVector composed = mu;
            for (std::size_t k = 0; k <= k_max; ++k) {
                ++report.checked;
                for (PolymerId v = 0; v < n; ++v)
                    if (std::abs(via_trees[k][v] - composed[v]) >
                        1e-12 * (1.0 + std::abs(composed[v])))
                        report.record_failure(std::string("tree iterate k=") + std::to_string(k) +
                                              " differs from the composed map under " +
                                              criterion_name(kind));
                if (k < k_max) composed = t_map(kind, g, rho, composed);
            }
        }
    }
    return report;
}

SweepReport prop6_bound_sweep(std::size_t max_polymers, std::size_t max_cluster) {
    SweepReport report;
    const CriterionKind kinds[] = {CriterionKind::KoteckyPreiss, CriterionKind::Dobrushin,
                                   CriterionKind::ImprovedDobrushin,
                                   CriterionKind::FernandezProcacci};
    for (std::size_t n = 1; n <= max_polymers; ++n) {
        for_each_graph(n, [&](const ClusterGraph& shape) {
            const InteractionGraph g = to_interaction(shape);
            std::set<std::vector<PolymerId>> seen;
            for (std::size_t len = 1; len <= max_cluster; ++len) {
                std::vector<std::size_t> idx(len, 0);
                for (;;) {
                    std::vector<PolymerId> seq(idx.begin(), idx.end());
                    std::vector<PolymerId> key = seq;
                    std::sort(key.begin() + 1, key.end());  // root stays first
                    if (seen.insert(key).second) {
                        const std::int64_t phi_abs = std::abs(ursell_coefficient(g, seq));
                        for (CriterionKind kind : kinds) {
                            ++report.checked;
                            const std::int64_t bound = tree_bound_sum(kind, g, seq);
                            if (phi_abs > bound)
                                report.record_failure(
                                    std::string("tree bound fails under ") +
                                    criterion_name(kind) + " on " + describe(shape) +
                                    ": |ursell|=" + std::to_string(phi_abs) +
                                    " bound=" + std::to_string(bound));
                        }
                    }
                    std::size_t pos = 0;
                    while (pos < len && idx[pos] + 1 == n) idx[pos++] = 0;
                    if (pos == len) break;
                    ++idx[pos];
                }
            }
        });
    }
    return report;
}

}  // namespace polygas
