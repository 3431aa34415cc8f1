#include "polygas/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace polygas {

const char* criterion_name(CriterionKind kind) {
    switch (kind) {
        case CriterionKind::KoteckyPreiss: return "kotecky-preiss";
        case CriterionKind::Dobrushin: return "dobrushin";
        case CriterionKind::ImprovedDobrushin: return "improved-dobrushin";
        case CriterionKind::FernandezProcacci: return "fernandez-procacci";
    }
    return "?";
}

std::optional<CriterionKind> parse_criterion(const std::string& token) {
    if (token == "kp" || token == "kotecky-preiss") return CriterionKind::KoteckyPreiss;
    if (token == "dob" || token == "dobrushin") return CriterionKind::Dobrushin;
    if (token == "impdob" || token == "improved-dobrushin") return CriterionKind::ImprovedDobrushin;
    if (token == "fp" || token == "fernandez-procacci") return CriterionKind::FernandezProcacci;
    return std::nullopt;
}

namespace {

void require_sized_nonnegative(const InteractionGraph& g, const ActivityVector& v,
                               const char* what) {
    if (v.size() != g.n_polymers())
        throw std::invalid_argument(std::string(what) + " sized for a different graph");
    for (double x : v)
        if (!(x >= 0.0)) throw std::invalid_argument(std::string(what) + " must be nonnegative");
}

}  // namespace

double phi(CriterionKind kind, const InteractionGraph& g, PolymerId g0, const ActivityVector& mu) {
    require_sized_nonnegative(g, mu, "weight vector");
    const PolymerSet& open = g.open_neighborhood(g0);
    switch (kind) {
        case CriterionKind::KoteckyPreiss: {
            double sum = mu[g0];  // g0 is incompatible with itself
            for (PolymerId v = open.find_first(); v != PolymerSet::npos; v = open.find_next(v))
                sum += mu[v];
            return std::exp(sum);
        }
        case CriterionKind::Dobrushin: {
            double prod = 1.0 + mu[g0];
            for (PolymerId v = open.find_first(); v != PolymerSet::npos; v = open.find_next(v))
                prod *= (1.0 + mu[v]);
            return prod;
        }
        case CriterionKind::ImprovedDobrushin: {
            double prod = 1.0;
            for (PolymerId v = open.find_first(); v != PolymerSet::npos; v = open.find_next(v))
                prod *= (1.0 + mu[v]);
            return mu[g0] + prod;
        }
        case CriterionKind::FernandezProcacci:
            // Xi over the closed neighborhood, split as mu[g0] plus Xi over
            // the open one; the open-neighborhood enumeration degenerates to
            // the ImprovedDobrushin product when the neighbors are mutually
            // compatible.
            return mu[g0] + partition_function(g, open, mu);
    }
    throw std::logic_error("unknown criterion");
}

ActivityVector t_map(CriterionKind kind, const InteractionGraph& g, const ActivityVector& rho,
                     const ActivityVector& mu) {
    require_sized_nonnegative(g, rho, "activity vector");
    ActivityVector out(g.n_polymers());
    for (PolymerId v = 0; v < g.n_polymers(); ++v) out[v] = rho[v] * phi(kind, g, v, mu);
    return out;
}

bool condition_holds(CriterionKind kind, const InteractionGraph& g, const ActivityVector& rho,
                     const ActivityVector& mu) {
    const ActivityVector mapped = t_map(kind, g, rho, mu);
    for (PolymerId v = 0; v < g.n_polymers(); ++v)
        if (mapped[v] > mu[v]) return false;
    return true;
}

FixedPointResult fixed_point(CriterionKind kind, const InteractionGraph& g,
                             const ActivityVector& rho, const FixedPointOptions& opt) {
    require_sized_nonnegative(g, rho, "activity vector");
    FixedPointResult result;
    ActivityVector mu = rho;
    if (opt.record_chain) result.chain.push_back(mu);

    for (std::size_t iter = 1; iter <= opt.max_iter; ++iter) {
        ActivityVector next = t_map(kind, g, rho, mu);
        result.iterations = iter;

        double increment = 0.0, scale = 0.0;
        for (PolymerId v = 0; v < next.size(); ++v) {
            increment = std::max(increment, std::abs(next[v] - mu[v]));
            scale = std::max(scale, next[v]);
        }
        result.last_increment = increment;

        for (PolymerId v = 0; v < next.size(); ++v)
            if (next[v] > opt.divergence_cap || !std::isfinite(next[v])) {
                result.diverged = true;
                result.offending = v;
                result.rho_star = std::move(next);
                return result;
            }

        mu = std::move(next);
        if (opt.record_chain) result.chain.push_back(mu);
        if (increment <= opt.tol * (1.0 + scale)) {
            result.converged = true;
            result.rho_star = std::move(mu);
            return result;
        }
    }
    result.rho_star = std::move(mu);  // neither converged nor provably divergent
    return result;
}

std::vector<ActivityVector> bound_chain(CriterionKind kind, const InteractionGraph& g,
                                        const ActivityVector& rho, const ActivityVector& mu,
                                        std::size_t n_steps) {
    if (!condition_holds(kind, g, rho, mu))
        throw std::invalid_argument("bound chain needs an admissible (rho, mu) pair");
    std::vector<ActivityVector> chain;
    chain.reserve(n_steps);
    ActivityVector current = mu;
    for (std::size_t k = 0; k < n_steps; ++k) {
        current = t_map(kind, g, rho, current);
        chain.push_back(current);
    }
    return chain;
}

bool geometric_interpolation_check(CriterionKind kind, const InteractionGraph& g,
                                   const ActivityVector& rho, const ActivityVector& mu,
                                   const ActivityVector& rho2, const ActivityVector& mu2,
                                   double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0))
        throw std::invalid_argument("interpolation parameter outside [0,1]");
    if (!condition_holds(kind, g, rho, mu) || !condition_holds(kind, g, rho2, mu2))
        throw std::invalid_argument("geometric interpolation needs two admissible pairs");
    const std::size_t n = g.n_polymers();
    ActivityVector rho_mix(n), mu_mix(n);
    for (PolymerId v = 0; v < n; ++v) {
        rho_mix[v] = std::pow(rho[v], lambda) * std::pow(rho2[v], 1.0 - lambda);
        mu_mix[v] = std::pow(mu[v], lambda) * std::pow(mu2[v], 1.0 - lambda);
    }
    return condition_holds(kind, g, rho_mix, mu_mix);
}

RadiusResult homogeneous_radius(const std::vector<double>& phi_coefficients) {
    if (phi_coefficients.empty() || phi_coefficients[0] != 1.0)
        throw std::invalid_argument("majorant polynomial must have constant term 1");
    for (double c : phi_coefficients)
        if (!(c >= 0.0))
            throw std::invalid_argument("majorant polynomial must have nonnegative coefficients");

    std::size_t degree = 0;
    for (std::size_t k = 0; k < phi_coefficients.size(); ++k)
        if (phi_coefficients[k] != 0.0) degree = k;

    RadiusResult out;
    if (degree == 0) {  // empty gas: mu/1 is unbounded
        out.value = std::numeric_limits<double>::infinity();
        out.attained = false;
        out.maximizer = std::numeric_limits<double>::quiet_NaN();
        return out;
    }
    if (degree == 1) {  // mu/(1+c mu) increases to the limit 1/c
        out.value = 1.0 / phi_coefficients[1];
        out.attained = false;
        out.maximizer = std::numeric_limits<double>::quiet_NaN();
        return out;
    }

    const auto eval = [&](double x) {
        double acc = 0.0;
        for (std::size_t k = phi_coefficients.size(); k-- > 0;)
            acc = acc * x + phi_coefficients[k];
        return acc;
    };
    // g(mu) = phi - mu phi' = 1 - sum_{k>=2} (k-1) c_k mu^k, nonincreasing.
    const auto stationarity = [&](double x) {
        double acc = 0.0;
        for (std::size_t k = phi_coefficients.size(); k-- > 2;)
            acc = acc * x + static_cast<double>(k - 1) * phi_coefficients[k];
        return 1.0 - acc * x * x;
    };

    double hi = 1.0;
    while (stationarity(hi) > 0.0) hi *= 2.0;
    double lo = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (stationarity(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-16 * hi) break;
    }
    out.maximizer = 0.5 * (lo + hi);
    out.value = out.maximizer / eval(out.maximizer);
    out.attained = true;
    return out;
}

RadiusResult closed_form_radius(CriterionKind kind, unsigned degree) {
    const double d = static_cast<double>(degree);
    RadiusResult out;
    switch (kind) {
        case CriterionKind::KoteckyPreiss:
            // sup of mu exp(-(degree+1) mu), at mu = 1/(degree+1)
            out.maximizer = 1.0 / (d + 1.0);
            out.value = 1.0 / ((d + 1.0) * std::exp(1.0));
            out.attained = true;
            return out;
        case CriterionKind::Dobrushin:
            if (degree == 0) {
                out.value = 1.0;
                out.attained = false;
                out.maximizer = std::numeric_limits<double>::quiet_NaN();
                return out;
            }
            out.maximizer = 1.0 / d;
            out.value = std::pow(d, d) / std::pow(d + 1.0, d + 1.0);
            out.attained = true;
            return out;
        case CriterionKind::ImprovedDobrushin:
        case CriterionKind::FernandezProcacci:
            if (degree <= 1) {
                out.value = 1.0 / (d + 1.0);
                out.attained = false;
                out.maximizer = std::numeric_limits<double>::quiet_NaN();
                return out;
            }
            out.maximizer = 1.0 / (d - 1.0);
            out.value = 1.0 / (1.0 + std::pow(d, d) / std::pow(d - 1.0, d - 1.0));
            out.attained = true;
            return out;
    }
    throw std::logic_error("unknown criterion");
}

double scott_sokal_reference(unsigned degree) {
    if (degree < 2) throw std::invalid_argument("reference radius needs degree >= 2");
    const double d = static_cast<double>(degree);
    return std::pow(d - 1.0, d - 1.0) / std::pow(d, d);
}

}  // namespace polygas
