#include "polygas/tree_expansion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace polygas {

int vertex_function(CriterionKind kind, const InteractionGraph& g, PolymerId root,
                    std::span<const PolymerId> children) {
    const std::size_t n = children.size();
    if (n == 0) return 1;
    for (PolymerId c : children)
        if (g.are_compatible(root, c)) return 0;
    switch (kind) {
        case CriterionKind::KoteckyPreiss:
            return 1;
        case CriterionKind::Dobrushin:
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    if (children[i] == children[j]) return 0;
            return 1;
        case CriterionKind::ImprovedDobrushin:
            for (std::size_t i = 0; i < n; ++i) {
                if (n >= 2 && children[i] == root) return 0;
                for (std::size_t j = i + 1; j < n; ++j)
                    if (children[i] == children[j]) return 0;
            }
            return 1;
        case CriterionKind::FernandezProcacci:
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    if (!g.are_compatible(children[i], children[j])) return 0;
            return 1;
    }
    throw std::logic_error("unknown criterion");
}

namespace {

/// Labeled trees on {0..n} rooted at 0, reported as children lists.
template <class Fn>
void for_each_labeled_rooted_tree(std::size_t n_vertices, Fn&& fn) {
    const std::size_t m = n_vertices;
    std::vector<std::vector<unsigned>> children(m);
    if (m == 1) {
        fn(children);
        return;
    }
    std::vector<unsigned> code(m > 2 ? m - 2 : 0, 0);
    std::vector<unsigned> degree(m), queue(m);
    std::vector<char> used(m), seen(m);
    std::vector<std::vector<unsigned>> adj(m);
    for (;;) {
        // decode the Pruefer sequence
        std::fill(degree.begin(), degree.end(), 1);
        for (unsigned x : code) ++degree[x];
        std::fill(used.begin(), used.end(), 0);
        for (auto& a : adj) a.clear();
        for (unsigned x : code) {
            unsigned leaf = 0;
            while (leaf < m && (degree[leaf] != 1 || used[leaf])) ++leaf;
            adj[leaf].push_back(x);
            adj[x].push_back(leaf);
            used[leaf] = 1;
            --degree[x];
        }
        {
            unsigned a = m, b = m;
            for (unsigned v = 0; v < m; ++v)
                if (!used[v] && degree[v] == 1) (a == m ? a : b) = v;
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
        // orient away from the root
        for (auto& c : children) c.clear();
        std::fill(seen.begin(), seen.end(), 0);
        queue[0] = 0;
        seen[0] = 1;
        std::size_t head = 0, tail = 1;
        while (head < tail) {
            const unsigned u = queue[head++];
            for (unsigned v : adj[u])
                if (!seen[v]) {
                    seen[v] = 1;
                    children[u].push_back(v);
                    queue[tail++] = v;
                }
        }
        fn(children);

        std::size_t pos = 0;
        while (pos < code.size() && code[pos] + 1 == m) code[pos++] = 0;
        if (pos == code.size()) break;
        ++code[pos];
    }
}

}  // namespace

std::int64_t tree_bound_sum(CriterionKind kind, const InteractionGraph& g,
                            const std::vector<PolymerId>& sequence, std::size_t max_order) {
    if (sequence.empty()) throw std::invalid_argument("tree bound of an empty sequence");
    const std::size_t n = sequence.size() - 1;
    if (n > max_order)
        throw std::length_error("cluster order " + std::to_string(n) + " over the cap of " +
                                std::to_string(max_order));
    std::int64_t total = 0;
    std::vector<PolymerId> child_polymers;
    for_each_labeled_rooted_tree(n + 1, [&](const std::vector<std::vector<unsigned>>& children) {
        for (std::size_t v = 0; v <= n; ++v) {
            child_polymers.clear();
            for (unsigned c : children[v]) child_polymers.push_back(sequence[c]);
            if (vertex_function(kind, g, sequence[v], child_polymers) == 0) return;
        }
        ++total;
    });
    return total;
}

std::size_t PlanarRootedTree::n_vertices() const {
    std::size_t total = 1;
    for (const auto& c : children) total += c.n_vertices();
    return total;
}

namespace {

std::int64_t factorial(std::size_t n) {
    std::int64_t f = 1;
    for (std::size_t i = 2; i <= n; ++i) f *= static_cast<std::int64_t>(i);
    return f;
}

std::int64_t branching_factorial_product(const PlanarRootedTree& t) {
    std::int64_t prod = factorial(t.children.size());
    for (const auto& c : t.children) prod *= branching_factorial_product(c);
    return prod;
}

}  // namespace

std::int64_t planar_multiplicity(const PlanarRootedTree& t) {
    return factorial(t.n_vertices() - 1) / branching_factorial_product(t);
}

std::vector<PlanarRootedTree> enumerate_planar_shapes(std::size_t n_nonroot) {
    if (n_nonroot == 0) return {PlanarRootedTree{}};
    // ordered forests of total size n hanging off the root: first subtree of
    // size j, remaining forest of size n - j
    std::vector<PlanarRootedTree> out;
    for (std::size_t j = 1; j <= n_nonroot; ++j) {
        const auto firsts = enumerate_planar_shapes(j - 1);
        const auto rests = enumerate_planar_shapes(n_nonroot - j);
        for (const auto& rest : rests)
            for (const auto& first : firsts) {
                PlanarRootedTree t;
                t.children.push_back(first);
                t.children.insert(t.children.end(), rest.children.begin(), rest.children.end());
                out.push_back(std::move(t));
            }
    }
    return out;
}

std::int64_t labeled_rooted_tree_count(std::size_t n) {
    if (n > 8) throw std::length_error("labeled tree count capped at order 8");
    if (n <= 1) return 1;
    std::int64_t result = 1;
    for (std::size_t i = 0; i + 1 < n; ++i) result *= static_cast<std::int64_t>(n + 1);
    return result;
}

namespace {

struct GenerationSum {
    CriterionKind kind;
    const InteractionGraph& g;
    const ActivityVector* child_weights;       // activity of each child polymer
    const ActivityVector* child_factors;       // subtree value below each child
    std::size_t s_max;
    std::uint64_t* work;

    std::vector<PolymerId> candidates;         // closed neighborhood of the vertex
    std::vector<PolymerId> prefix;

    double total = 0.0;
    double omitted = 0.0;                      // first omitted branching order

    bool prefix_admits(PolymerId next) const {
        switch (kind) {
            case CriterionKind::KoteckyPreiss:
                return true;
            case CriterionKind::Dobrushin:
            case CriterionKind::ImprovedDobrushin:
                return std::find(prefix.begin(), prefix.end(), next) == prefix.end();
            case CriterionKind::FernandezProcacci:
                for (PolymerId p : prefix)
                    if (!g.are_compatible(p, next)) return false;
                return true;
        }
        return false;
    }

    void run(PolymerId vertex) {
        total = 1.0;  // the childless term
        omitted = 0.0;
        candidates.clear();
        const PolymerSet& open = g.open_neighborhood(vertex);
        const bool skip_self = (kind == CriterionKind::ImprovedDobrushin);
        if (!skip_self) candidates.push_back(vertex);
        for (PolymerId v = open.find_first(); v != PolymerSet::npos; v = open.find_next(v)) {
            if (v == vertex) continue;
            candidates.push_back(v);
        }
        std::sort(candidates.begin(), candidates.end());
        prefix.clear();
        extend(1.0, 1.0);
        if (skip_self) {
            // the lone-root-polymer child, admissible only by itself
            total += (*child_weights)[vertex] * (*child_factors)[vertex];
        }
    }

    void extend(double factor, double inv_factorial) {
        const std::size_t n = prefix.size();
        if (n == s_max) {
            for (PolymerId c : candidates)
                if (prefix_admits(c))
                    omitted += factor * (*child_weights)[c] * (*child_factors)[c] *
                               inv_factorial / static_cast<double>(n + 1);
            return;
        }
        for (PolymerId c : candidates) {
            if (*work == 0) throw std::length_error("tree recursion exceeded the work budget");
            --(*work);
            if (!prefix_admits(c)) continue;
            const double f = factor * (*child_weights)[c] * (*child_factors)[c];
            const double inv = inv_factorial / static_cast<double>(n + 1);
            prefix.push_back(c);
            total += f * inv;
            extend(f, inv);
            prefix.pop_back();
        }
    }
};

}  // namespace

std::vector<ActivityVector> tree_iterates(CriterionKind kind, const InteractionGraph& g,
                                          const ActivityVector& rho, const ActivityVector& mu,
                                          std::size_t k_max, const TreeIterateOptions& opt) {
    const std::size_t n = g.n_polymers();
    if (rho.size() != n || mu.size() != n)
        throw std::invalid_argument("activity vectors sized for a different graph");
    for (std::size_t v = 0; v < n; ++v)
        if (!(rho[v] >= 0.0) || !(mu[v] >= 0.0))
            throw std::invalid_argument("tree iterates need nonnegative activities");

    std::size_t s_max = opt.s_max;
    if (s_max == 0) s_max = (kind == CriterionKind::KoteckyPreiss) ? 12 : std::max<std::size_t>(n, 1);

    std::vector<ActivityVector> iterates;
    iterates.push_back(mu);
    if (k_max == 0) return iterates;

    std::uint64_t work = opt.max_work;
    // factors[v]: full subtree sum below a vertex carrying v, one generation
    // deeper each round; generation-(k) vertices carry mu, the rest rho.
    ActivityVector factors(n, 1.0);
    std::vector<ActivityVector> levels;  // levels[h][v] for h = 1..k_max
    for (std::size_t h = 1; h <= k_max; ++h) {
        const ActivityVector& weights = (h == 1) ? mu : rho;
        ActivityVector next(n);
        GenerationSum sum{kind, g, &weights, &factors, s_max, &work, {}, {}};
        for (PolymerId v = 0; v < n; ++v) {
            sum.run(v);
            if (sum.omitted > opt.truncation_tol * (1.0 + std::abs(sum.total)))
                throw std::length_error(
                    "branching truncation at s_max=" + std::to_string(s_max) +
                    " drops weight " + std::to_string(sum.omitted) + "; raise s_max");
            next[v] = sum.total;
        }
        factors = std::move(next);
        levels.push_back(factors);
    }
    for (std::size_t k = 1; k <= k_max; ++k) {
        ActivityVector out(n);
        for (PolymerId v = 0; v < n; ++v) out[v] = rho[v] * levels[k - 1][v];
        iterates.push_back(std::move(out));
    }
    return iterates;
}

ActivityVector iterate_via_trees(CriterionKind kind, const InteractionGraph& g,
                                 const ActivityVector& rho, std::size_t k,
                                 const ActivityVector& mu, const TreeIterateOptions& opt) {
    return tree_iterates(kind, g, rho, mu, k, opt).back();
}

}  // namespace polygas
