#include "polygas/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>

namespace polygas {

InteractionGraph build_family_graph(const SubsetPolymerFamily& f) {
    for (const auto& p : f.polymers) {
        if (p.empty()) throw std::invalid_argument("family contains an empty polymer");
        for (std::size_t s : p)
            if (s >= f.n_sites) throw std::out_of_range("polymer site index out of range");
    }
    InteractionGraph g(f.polymers.size());
    const auto overlap = [](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
        std::size_t i = 0, j = 0;
        while (i < a.size() && j < b.size()) {
            if (a[i] == b[j]) return true;
            (a[i] < b[j]) ? ++i : ++j;
        }
        return false;
    };
    for (std::size_t u = 0; u < f.polymers.size(); ++u)
        for (std::size_t v = u + 1; v < f.polymers.size(); ++v)
            if (overlap(f.polymers[u], f.polymers[v])) g.add_incompatibility(u, v);
    return g;
}

SubsetPolymerFamily domino_family(std::size_t width, std::size_t height) {
    if (width == 0 || height == 0 || (width < 2 && height < 2))
        throw std::invalid_argument("window too small for any domino");
    SubsetPolymerFamily f;
    f.n_sites = width * height;
    f.frame_w = static_cast<double>(width);
    f.frame_h = static_cast<double>(height);
    const auto cell = [&](std::size_t x, std::size_t y) { return y * width + x; };
    f.site_labels.resize(f.n_sites);
    f.site_coords.resize(f.n_sites);
    for (std::size_t y = 0; y < height; ++y)
        for (std::size_t x = 0; x < width; ++x) {
            f.site_labels[cell(x, y)] =
                "(" + std::to_string(x) + "," + std::to_string(y) + ")";
            f.site_coords[cell(x, y)] = {static_cast<double>(x) + 0.5,
                                         static_cast<double>(y) + 0.5};
        }
    for (std::size_t y = 0; y < height; ++y)
        for (std::size_t x = 0; x + 1 < width; ++x)
            f.polymers.push_back({cell(x, y), cell(x + 1, y)});
    for (std::size_t y = 0; y + 1 < height; ++y)
        for (std::size_t x = 0; x < width; ++x)
            f.polymers.push_back({cell(x, y), cell(x, y + 1)});
    for (auto& p : f.polymers) std::sort(p.begin(), p.end());
    return f;
}

TriangularPatch triangular_patch(int radius) {
    if (radius < 1) throw std::invalid_argument("triangular patch needs radius >= 1");
    TriangularPatch patch;
    std::map<std::pair<int, int>, PolymerId> index;
    for (int q = -radius; q <= radius; ++q)
        for (int r = std::max(-radius, -q - radius); r <= std::min(radius, -q + radius); ++r) {
            index[{q, r}] = patch.axial_coords.size();
            patch.axial_coords.emplace_back(q, r);
        }
    patch.center = index.at({0, 0});
    patch.graph = InteractionGraph(patch.axial_coords.size());
    static constexpr std::pair<int, int> steps[6] = {{1, 0},  {-1, 0}, {0, 1},
                                                     {0, -1}, {1, -1}, {-1, 1}};
    for (std::size_t i = 0; i < patch.axial_coords.size(); ++i) {
        const auto [q, r] = patch.axial_coords[i];
        for (const auto& [dq, dr] : steps) {
            const auto it = index.find({q + dq, r + dr});
            if (it != index.end() && it->second > i)
                patch.graph.add_incompatibility(i, it->second);
        }
    }
    return patch;
}

IndependencePolynomial neighborhood_polynomial(const InteractionGraph& g, PolymerId g0,
                                               const EnumerationOptions& opt) {
    return independence_polynomial(g, g.closed_neighborhood(g0), opt);
}

PolymerId interior_polymer(const SubsetPolymerFamily& f) {
    if (f.site_coords.empty() || f.frame_w <= 0.0 || f.frame_h <= 0.0)
        throw std::invalid_argument("interior polymer needs family geometry");
    const double cx = f.frame_w / 2.0, cy = f.frame_h / 2.0;
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_id = f.polymers.size();
    for (std::size_t p = 0; p < f.polymers.size(); ++p) {
        double mx = 0.0, my = 0.0, diameter = 0.0;
        const auto& cells = f.polymers[p];
        for (std::size_t i = 0; i < cells.size(); ++i) {
            mx += f.site_coords[cells[i]][0];
            my += f.site_coords[cells[i]][1];
            for (std::size_t j = i + 1; j < cells.size(); ++j)
                diameter = std::max(diameter,
                                    std::hypot(f.site_coords[cells[i]][0] - f.site_coords[cells[j]][0],
                                               f.site_coords[cells[i]][1] - f.site_coords[cells[j]][1]));
        }
        mx /= static_cast<double>(cells.size());
        my /= static_cast<double>(cells.size());
        const double frame_dist = std::min(std::min(mx, f.frame_w - mx), std::min(my, f.frame_h - my));
        if (frame_dist < 2.0 * diameter) continue;
        const double d = std::hypot(mx - cx, my - cy);
        if (d < best) {
            best = d;
            best_id = p;
        }
    }
    if (best_id == f.polymers.size())
        throw std::invalid_argument("window too small: no polymer clears the boundary guard");
    return best_id;
}

double bounded_degree_phi(CriterionKind kind, unsigned degree, double mu) {
    if (!(mu >= 0.0)) throw std::invalid_argument("weight must be nonnegative");
    const double d = static_cast<double>(degree);
    switch (kind) {
        case CriterionKind::KoteckyPreiss: return std::exp((d + 1.0) * mu);
        case CriterionKind::Dobrushin: return std::pow(1.0 + mu, d + 1.0);
        case CriterionKind::ImprovedDobrushin:
        case CriterionKind::FernandezProcacci: return mu + std::pow(1.0 + mu, d);
    }
    throw std::logic_error("unknown criterion");
}

namespace {

std::vector<double> site_sums(const SubsetPolymerFamily& f, const ActivityVector& rho,
                              const std::vector<double>& a) {
    std::vector<double> s(f.n_sites, 0.0);
    for (std::size_t p = 0; p < f.polymers.size(); ++p) {
        const double w = rho[p] * std::exp(a[p]);
        for (std::size_t x : f.polymers[p]) s[x] += w;
    }
    return s;
}

}  // namespace

GruberKunzReport gruber_kunz_condition(const SubsetPolymerFamily& f, const ActivityVector& rho,
                                       const std::vector<double>& a, bool global_site_sup) {
    if (rho.size() != f.polymers.size() || a.size() != f.polymers.size())
        throw std::invalid_argument("rho and a must have one entry per polymer");
    for (std::size_t p = 0; p < a.size(); ++p)
        if (!(a[p] >= 0.0) || !(rho[p] >= 0.0))
            throw std::invalid_argument("rho and a must be nonnegative");

    const auto sums = site_sums(f, rho, a);
    const double global_sup = sums.empty() ? 0.0 : *std::max_element(sums.begin(), sums.end());

    GruberKunzReport report;
    report.holds = true;
    report.margin = std::numeric_limits<double>::infinity();
    report.pi_upper_bounds.resize(f.polymers.size());
    for (std::size_t p = 0; p < f.polymers.size(); ++p) {
        double lhs = global_site_sup ? global_sup : 0.0;
        if (!global_site_sup)
            for (std::size_t x : f.polymers[p]) lhs = std::max(lhs, sums[x]);
        const double rhs =
            std::expm1(a[p] / static_cast<double>(f.polymers[p].size()));
        const double margin = rhs - lhs;
        if (margin < report.margin) {
            report.margin = margin;
            report.worst_polymer = p;
        }
        if (margin < 0.0) report.holds = false;
        report.pi_upper_bounds[p] = std::exp(a[p]);
    }
    return report;
}

SubsetConditionVerdicts subset_criteria_table3(const SubsetPolymerFamily& f,
                                               const ActivityVector& rho, double a) {
    if (rho.size() != f.polymers.size())
        throw std::invalid_argument("rho must have one entry per polymer");
    if (!(a >= 0.0)) throw std::invalid_argument("exponent must be nonnegative");

    std::vector<double> weights(f.polymers.size());
    for (std::size_t p = 0; p < f.polymers.size(); ++p)
        weights[p] = rho[p] * std::exp(a * static_cast<double>(f.polymers[p].size()));

    std::vector<double> sums(f.n_sites, 0.0), prods(f.n_sites, 1.0);
    for (std::size_t p = 0; p < f.polymers.size(); ++p)
        for (std::size_t x : f.polymers[p]) {
            sums[x] += weights[p];
            prods[x] *= 1.0 + weights[p];
        }

    SubsetConditionVerdicts v;
    v.sum_lhs = sums.empty() ? 0.0 : *std::max_element(sums.begin(), sums.end());
    v.prod_lhs = prods.empty() ? 1.0 : *std::max_element(prods.begin(), prods.end());
    v.kotecky_preiss = v.sum_lhs <= a;
    v.dobrushin = v.prod_lhs <= std::exp(a);
    v.gruber_kunz = v.sum_lhs <= std::expm1(a);
    return v;
}

}  // namespace polygas
