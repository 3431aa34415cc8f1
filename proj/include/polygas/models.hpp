#pragma once

#include "polygas/criteria.hpp"
#include "polygas/gas.hpp"
#include "polygas/graph.hpp"

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace polygas {

/// Polymers as finite nonempty subsets of a ground set of sites;
/// incompatibility is overlap (plus the implicit self-exclusion).
struct SubsetPolymerFamily {
    std::size_t n_sites = 0;
    std::vector<std::vector<std::size_t>> polymers;    // sorted site indices
    std::vector<std::string> site_labels;              // optional
    std::vector<std::array<double, 2>> site_coords;    // optional geometry
    double frame_w = 0.0, frame_h = 0.0;               // window frame, when geometric

    std::size_t size(std::size_t polymer) const { return polymers[polymer].size(); }
};

/// Overlap graph of the family: polymers are incompatible iff they share a
/// site.
InteractionGraph build_family_graph(const SubsetPolymerFamily& f);

/// All 2-cell horizontal and vertical dominoes in a width x height window.
/// Count: (w-1)h + w(h-1).
SubsetPolymerFamily domino_family(std::size_t width, std::size_t height);

/// Hexagonal patch of the triangular lattice in axial coordinates; polymers
/// are single sites, incompatible iff equal or lattice-adjacent (6-neighbor
/// rule). Built directly as a site graph.
struct TriangularPatch {
    InteractionGraph graph;
    std::vector<std::pair<int, int>> axial_coords;
    PolymerId center = 0;
};

TriangularPatch triangular_patch(int radius);

/// Independence polynomial of the closed neighborhood of g0: the criterion
/// polynomial of the model at homogeneous weights.
IndependencePolynomial neighborhood_polynomial(const InteractionGraph& g, PolymerId g0,
                                               const EnumerationOptions& opt = {});

/// The polymer whose cells sit closest to the window centroid, guarded to
/// stay at least two polymer-diameters away from the frame. Requires the
/// family to carry geometry.
PolymerId interior_polymer(const SubsetPolymerFamily& f);

/// Closed-form majorant value on graphs of maximal degree `degree`:
///   KoteckyPreiss      exp((degree+1) mu)
///   Dobrushin          (1+mu)^(degree+1)
///   ImprovedDobrushin  mu + (1+mu)^degree   (also the regular-tree value of
///                      the FernandezProcacci criterion)
double bounded_degree_phi(CriterionKind kind, unsigned degree, double mu);

struct GruberKunzReport {
    bool holds = false;
    std::size_t worst_polymer = 0;
    double margin = 0.0;                  // min over polymers of rhs - lhs
    std::vector<double> pi_upper_bounds;  // exp(a) per polymer, valid when holds
};

/// Site-supremum sufficient condition for subset polymers: for every polymer
/// p, the largest over sites x in p of the sum over polymers through x of
/// rho exp(a) must stay below exp(a(p)/|p|) - 1. With `global_site_sup` the
/// supremum runs over all sites instead (the weaker traditional form).
GruberKunzReport gruber_kunz_condition(const SubsetPolymerFamily& f, const ActivityVector& rho,
                                       const std::vector<double>& a, bool global_site_sup = false);

struct SubsetConditionVerdicts {
    bool kotecky_preiss = false;
    bool dobrushin = false;
    bool gruber_kunz = false;
    double sum_lhs = 0.0;   // max over sites of the weighted sum
    double prod_lhs = 0.0;  // max over sites of the weighted product
};

/// The three standard subset-polymer conditions with weights a(p) = a|p| and
/// a global site supremum.
SubsetConditionVerdicts subset_criteria_table3(const SubsetPolymerFamily& f,
                                               const ActivityVector& rho, double a);

}  // namespace polygas
