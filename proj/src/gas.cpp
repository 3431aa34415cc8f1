#include "polygas/gas.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace polygas {

namespace {

constexpr std::uint64_t bit(unsigned v) { return std::uint64_t{1} << v; }

/// Region prepared for subset enumeration: member ids in increasing order
/// and the adjacency restricted to the region, as bitmasks.
struct LocalRegion {
    std::vector<PolymerId> ids;
    std::vector<std::uint64_t> adj;
    std::uint64_t full = 0;
};

LocalRegion localize(const InteractionGraph& g, const PolymerSet& region,
                     const EnumerationOptions& opt) {
    if (region.size() != g.n_polymers())
        throw std::invalid_argument("region set sized for a different graph");
    const std::size_t m = region.count();
    if (m > opt.max_region)
        throw std::length_error("region of " + std::to_string(m) +
                                " polymers exceeds the enumeration cap of " +
                                std::to_string(opt.max_region));
    if (m > 64) throw std::length_error("region larger than 64 polymers");

    LocalRegion loc;
    loc.ids.reserve(m);
    for (PolymerId v = region.find_first(); v != PolymerSet::npos; v = region.find_next(v))
        loc.ids.push_back(v);
    loc.adj.assign(m, 0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if (!g.are_compatible(loc.ids[i], loc.ids[j])) {
                loc.adj[i] |= bit(j);
                loc.adj[j] |= bit(i);
            }
    loc.full = (m == 64) ? ~std::uint64_t{0} : (bit(m) - 1);
    return loc;
}

std::uint64_t component_of_lowest(const std::vector<std::uint64_t>& adj, std::uint64_t mask) {
    std::uint64_t comp = mask & (~mask + 1);
    for (;;) {
        std::uint64_t next = comp;
        for (std::uint64_t r = comp; r;) {
            const unsigned v = static_cast<unsigned>(std::countr_zero(r));
            r &= r - 1;
            next |= adj[v] & mask;
        }
        if (next == comp) return comp;
        comp = next;
    }
}

/// Independent-subset sum with branch-and-split: split into connected pieces
/// (in increasing index order), then branch on the lowest vertex of a piece.
template <class T>
struct SubsetSum {
    const LocalRegion& loc;
    std::vector<T> z;

    T eval_set(std::uint64_t mask) const {
        T acc{1};
        std::uint64_t rest = mask;
        while (rest) {
            const std::uint64_t comp = component_of_lowest(loc.adj, rest);
            rest &= ~comp;
            acc *= eval_component(comp);
        }
        return acc;
    }

    T eval_component(std::uint64_t comp) const {
        const unsigned v = static_cast<unsigned>(std::countr_zero(comp));
        if ((comp & (comp - 1)) == 0) return T{1} + z[v];
        return eval_set(comp & ~bit(v)) + z[v] * eval_set(comp & ~(bit(v) | loc.adj[v]));
    }
};

template <class T>
std::vector<T> restrict_activities(const LocalRegion& loc, const std::vector<T>& z,
                                   std::size_t n_polymers) {
    if (z.size() != n_polymers)
        throw std::invalid_argument("activity vector sized for a different graph");
    std::vector<T> out(loc.ids.size());
    for (std::size_t i = 0; i < loc.ids.size(); ++i) out[i] = z[loc.ids[i]];
    return out;
}

void require_member(const PolymerSet& region, PolymerId g0) {
    if (g0 >= region.size() || !region.test(g0))
        throw std::invalid_argument("pinned polymer " + std::to_string(g0) +
                                    " is not a member of the region");
}

void require_nonnegative_on(const PolymerSet& region, const ActivityVector& values,
                            const char* what) {
    for (PolymerId v = region.find_first(); v != PolymerSet::npos; v = region.find_next(v))
        if (!(values[v] >= 0.0))
            throw std::invalid_argument(std::string(what) + " must be nonnegative");
}

}  // namespace

double partition_function(const InteractionGraph& g, const PolymerSet& region,
                          const ActivityVector& z, const EnumerationOptions& opt) {
    const LocalRegion loc = localize(g, region, opt);
    SubsetSum<double> sum{loc, restrict_activities(loc, z, g.n_polymers())};
    return sum.eval_set(loc.full);
}

std::int64_t partition_function_exact(const InteractionGraph& g, const PolymerSet& region,
                                      const std::vector<std::int64_t>& z,
                                      const EnumerationOptions& opt) {
    const LocalRegion loc = localize(g, region, opt);
    SubsetSum<std::int64_t> sum{loc, restrict_activities(loc, z, g.n_polymers())};
    return sum.eval_set(loc.full);
}

double IndependencePolynomial::operator()(double x) const {
    double acc = 0.0;
    for (std::size_t k = coefficients.size(); k-- > 0;)
        acc = acc * x + static_cast<double>(coefficients[k]);
    return acc;
}

namespace {

using Counts = std::vector<std::uint64_t>;

Counts convolve(const Counts& a, const Counts& b) {
    Counts out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

Counts add(Counts a, const Counts& b, std::size_t shift) {
    if (a.size() < b.size() + shift) a.resize(b.size() + shift, 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] += b[i];
    return a;
}

struct CountEnumerator {
    const LocalRegion& loc;

    Counts eval_set(std::uint64_t mask) const {
        Counts acc{1};
        std::uint64_t rest = mask;
        while (rest) {
            const std::uint64_t comp = component_of_lowest(loc.adj, rest);
            rest &= ~comp;
            acc = convolve(acc, eval_component(comp));
        }
        return acc;
    }

    Counts eval_component(std::uint64_t comp) const {
        const unsigned v = static_cast<unsigned>(std::countr_zero(comp));
        if ((comp & (comp - 1)) == 0) return Counts{1, 1};
        return add(eval_set(comp & ~bit(v)), eval_set(comp & ~(bit(v) | loc.adj[v])), 1);
    }
};

}  // namespace

IndependencePolynomial independence_polynomial(const InteractionGraph& g, const PolymerSet& region,
                                               const EnumerationOptions& opt) {
    const LocalRegion loc = localize(g, region, opt);
    CountEnumerator en{loc};
    return IndependencePolynomial{en.eval_set(loc.full)};
}

double neighborhood_xi(const InteractionGraph& g, PolymerId g0, const ActivityVector& mu,
                       const EnumerationOptions& opt) {
    const PolymerSet star = g.closed_neighborhood(g0);
    require_nonnegative_on(star, mu, "neighborhood activities");
    return partition_function(g, star, mu, opt);
}

double pinned_log_ratio(const InteractionGraph& g, const PolymerSet& region, PolymerId g0,
                        const ActivityVector& z, const EnumerationOptions& opt) {
    require_member(region, g0);
    const double xi_full = partition_function(g, region, z, opt);
    PolymerSet without = region;
    without.reset(g0);
    const double xi_rest = partition_function(g, without, z, opt);
    if (xi_full == 0.0 || xi_rest == 0.0 || (xi_full > 0) != (xi_rest > 0))
        throw std::domain_error(
            "pinned ratio undefined: partition function vanishes or flips sign");
    return std::log(xi_full / xi_rest);
}

double pinned_derivative(const InteractionGraph& g, const PolymerSet& region, PolymerId g0,
                         const ActivityVector& z, const EnumerationOptions& opt) {
    require_member(region, g0);
    const double xi_full = partition_function(g, region, z, opt);
    if (xi_full == 0.0) throw std::domain_error("pinned derivative undefined: zero denominator");
    const double xi_far = partition_function(g, region - g.closed_neighborhood(g0), z, opt);
    return xi_far / xi_full;
}

double pi_volume(const InteractionGraph& g, const PolymerSet& region, PolymerId g0,
                 const ActivityVector& rho, const EnumerationOptions& opt) {
    require_member(region, g0);
    require_nonnegative_on(region, rho, "pinned-series activities");
    ActivityVector neg(rho.size());
    for (std::size_t i = 0; i < rho.size(); ++i) neg[i] = -rho[i];
    const double xi_full = partition_function(g, region, neg, opt);
    if (!(xi_full > 0.0))
        throw std::domain_error(
            "pinned series undefined: partition function at -rho is not positive (rho outside "
            "the finite-volume convergence region)");
    const double xi_far = partition_function(g, region - g.closed_neighborhood(g0), neg, opt);
    return xi_far / xi_full;
}

double pi_volume(const InteractionGraph& g, const PolymerSet& region, PolymerId g0, double rho,
                 const EnumerationOptions& opt) {
    return pi_volume(g, region, g0, constant_activities(g.n_polymers(), rho), opt);
}

double configuration_weight(const InteractionGraph& g, const PolymerSet& region,
                            const ActivityVector& z, const PolymerSet& S,
                            const EnumerationOptions& opt) {
    if (S.size() != region.size() || !S.is_subset_of(region))
        throw std::invalid_argument("configuration is not a subset of the region");
    require_nonnegative_on(region, z, "activities");
    const double xi = partition_function(g, region, z, opt);
    if (!(xi > 0.0)) throw std::domain_error("configuration weight undefined: Xi not positive");

    double product = 1.0;
    for (PolymerId u = S.find_first(); u != PolymerSet::npos; u = S.find_next(u)) {
        product *= z[u];
        for (PolymerId v = S.find_next(u); v != PolymerSet::npos; v = S.find_next(v))
            if (!g.are_compatible(u, v)) return 0.0;
    }
    return product / xi;
}

ActivityVector constant_activities(std::size_t n_polymers, double value) {
    return ActivityVector(n_polymers, value);
}

}  // namespace polygas
