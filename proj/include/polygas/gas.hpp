#pragma once

#include "polygas/graph.hpp"

#include <cstdint>
#include <vector>

namespace polygas {

/// Per-polymer real activities, indexed by PolymerId. Signed values are fine
/// for partition-function evaluation; the convergence criteria restrict to
/// nonnegative vectors.
using ActivityVector = std::vector<double>;

struct EnumerationOptions {
    /// Largest region admitted for subset enumeration. Exceeding it is an
    /// error, never a silent truncation.
    std::size_t max_region = 30;
};

/// Grand-canonical partition function over the region: the sum over all
/// compatible (independent) subsets S of the region of the product of the
/// activities in S. The empty region gives 1.
double partition_function(const InteractionGraph& g, const PolymerSet& region,
                          const ActivityVector& z, const EnumerationOptions& opt = {});

/// Same sum with integer activities, accumulated exactly.
std::int64_t partition_function_exact(const InteractionGraph& g, const PolymerSet& region,
                                      const std::vector<std::int64_t>& z,
                                      const EnumerationOptions& opt = {});

/// coefficients[k] = number of compatible k-subsets of the region, so the
/// polynomial evaluates to the partition function at constant activity.
struct IndependencePolynomial {
    std::vector<std::uint64_t> coefficients;

    double operator()(double x) const;
    std::size_t degree() const { return coefficients.empty() ? 0 : coefficients.size() - 1; }
    bool operator==(const IndependencePolynomial&) const = default;
};

IndependencePolynomial independence_polynomial(const InteractionGraph& g, const PolymerSet& region,
                                               const EnumerationOptions& opt = {});

/// Partition function over the closed neighborhood of g0 at nonnegative
/// activities mu. Decomposes as mu[g0] plus the partition function over the
/// open neighborhood.
double neighborhood_xi(const InteractionGraph& g, PolymerId g0, const ActivityVector& mu,
                       const EnumerationOptions& opt = {});

/// log(Xi_region / Xi_{region minus g0}). Requires both partition functions
/// nonzero and of the same sign; anything else means z left the finite-volume
/// convergence region.
double pinned_log_ratio(const InteractionGraph& g, const PolymerSet& region, PolymerId g0,
                        const ActivityVector& z, const EnumerationOptions& opt = {});

/// d/dz_{g0} log Xi_region = Xi_{region minus N*[g0]} / Xi_region.
double pinned_derivative(const InteractionGraph& g, const PolymerSet& region, PolymerId g0,
                         const ActivityVector& z, const EnumerationOptions& opt = {});

/// Finite-volume pinned majorant series evaluated at -rho:
/// Xi_{region minus N*[g0]}(-rho) / Xi_region(-rho). Requires
/// Xi_region(-rho) > 0; a nonpositive value signals rho outside the
/// finite-volume convergence region. Positivity is checked on the evaluated
/// value only, not along the whole segment [0, rho].
double pi_volume(const InteractionGraph& g, const PolymerSet& region, PolymerId g0, double rho,
                 const EnumerationOptions& opt = {});
double pi_volume(const InteractionGraph& g, const PolymerSet& region, PolymerId g0,
                 const ActivityVector& rho, const EnumerationOptions& opt = {});

/// Probability of the configuration S in the region at activities z >= 0:
/// product of activities over S, times the compatibility indicator, over
/// Xi_region. Sums to 1 over compatible subsets.
double configuration_weight(const InteractionGraph& g, const PolymerSet& region,
                            const ActivityVector& z, const PolymerSet& S,
                            const EnumerationOptions& opt = {});

ActivityVector constant_activities(std::size_t n_polymers, double value);

}  // namespace polygas
