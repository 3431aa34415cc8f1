#pragma once

#include "polygas/gas.hpp"
#include "polygas/graph.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace polygas {

/// The four convergence conditions, ordered from the loosest bound to the
/// sharpest: phi(FernandezProcacci) <= phi(ImprovedDobrushin) <=
/// phi(Dobrushin) <= phi(KoteckyPreiss) pointwise.
enum class CriterionKind { KoteckyPreiss, Dobrushin, ImprovedDobrushin, FernandezProcacci };

const char* criterion_name(CriterionKind kind);
std::optional<CriterionKind> parse_criterion(const std::string& token);

/// The criterion's majorant function at g0:
///   KoteckyPreiss       exp of the mu-sum over the closed neighborhood
///   Dobrushin           product of (1+mu) over the closed neighborhood
///   ImprovedDobrushin   mu[g0] + product of (1+mu) over the open neighborhood
///   FernandezProcacci   mu[g0] + partition function of the open neighborhood
double phi(CriterionKind kind, const InteractionGraph& g, PolymerId g0, const ActivityVector& mu);

/// One application of the monotone map: (rho_g * phi_g(mu))_g.
ActivityVector t_map(CriterionKind kind, const InteractionGraph& g, const ActivityVector& rho,
                     const ActivityVector& mu);

/// t_map(mu) <= mu componentwise.
bool condition_holds(CriterionKind kind, const InteractionGraph& g, const ActivityVector& rho,
                     const ActivityVector& mu);

struct FixedPointOptions {
    double tol = 1e-12;           // relative sup-norm stop
    std::size_t max_iter = 100000;
    double divergence_cap = 1e12; // any coordinate above this means no finite fixed point
    bool record_chain = false;
};

struct FixedPointResult {
    ActivityVector rho_star;
    std::size_t iterations = 0;
    bool converged = false;
    bool diverged = false;
    std::optional<PolymerId> offending;  // coordinate that crossed the cap
    double last_increment = 0.0;
    std::vector<ActivityVector> chain;   // iterates, when recorded
};

/// Iterates the map from mu = rho. The iterates increase monotonically, so
/// the only outcomes are convergence to the least fixed point and unbounded
/// growth; divergence is a result state, not an error.
FixedPointResult fixed_point(CriterionKind kind, const InteractionGraph& g,
                             const ActivityVector& rho, const FixedPointOptions& opt = {});

/// [T(mu), T^2(mu), ...] for n_steps steps; requires condition_holds(rho, mu),
/// which makes the chain componentwise nonincreasing and >= the fixed point.
std::vector<ActivityVector> bound_chain(CriterionKind kind, const InteractionGraph& g,
                                        const ActivityVector& rho, const ActivityVector& mu,
                                        std::size_t n_steps);

/// Checks the condition at the componentwise geometric interpolation of two
/// admissible pairs; both inputs must satisfy the condition.
bool geometric_interpolation_check(CriterionKind kind, const InteractionGraph& g,
                                   const ActivityVector& rho, const ActivityVector& mu,
                                   const ActivityVector& rho2, const ActivityVector& mu2,
                                   double lambda);

struct RadiusResult {
    double value = 0.0;
    bool attained = false;
    double maximizer = 0.0;  // NaN when the supremum is not attained
};

/// sup over mu > 0 of mu / phi(mu) for a univariate polynomial phi with
/// nonnegative coefficients and phi(0) = 1. For degree >= 2 the interior
/// maximizer solves phi(mu) = mu phi'(mu); for degree 1 the supremum 1/c is
/// a limit and is returned with attained = false.
RadiusResult homogeneous_radius(const std::vector<double>& phi_coefficients);

/// Closed-form homogeneous radius on graphs of maximal degree `degree`
/// (the regular-tree worst case). FernandezProcacci maps to the
/// ImprovedDobrushin form, which is its value on regular trees.
RadiusResult closed_form_radius(CriterionKind kind, unsigned degree);

/// Reference radius (Delta-1)^(Delta-1)/Delta^Delta, exact on the regular
/// tree; external benchmark value, requires degree >= 2.
double scott_sokal_reference(unsigned degree);

}  // namespace polygas
