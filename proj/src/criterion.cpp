#include "jcdc/criterion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "jcdc/errors.hpp"

namespace jcdc {

BetaSet zero_betas(int k, int dim) {
    if (k < 1 || dim < 0) throw ConfigError("zero_betas: bad dimensions");
    return BetaSet(static_cast<std::size_t>(k), Eigen::VectorXd::Zero(dim));
}

double clamped_exp(double x) { return std::exp(std::clamp(x, -kExpClamp, kExpClamp)); }

double edge_weight(double w, double dot) {
    const double value = w - clamped_exp(-dot);
    if (value < w) return value;
    // For large inner products exp(-dot) underflows below one ulp of w and the
    // subtraction rounds back to w; return the largest double below w so the
    // strict upper bound holds for every input.
    return std::nextafter(w, -std::numeric_limits<double>::infinity());
}

namespace {

void check_inputs(const Graph& g, const Partition& part, double alpha) {
    part.validate();
    if (part.n() != g.n()) throw DimensionError("criterion: partition size != graph size");
    // The criterion itself is defined for any nonnegative exponent (alpha = 2
    // turns the marginal into a sum of edge densities); the [0, 1] range that
    // the theory needs is enforced where fits are configured.
    if (!(alpha >= 0.0)) throw ConfigError("criterion: alpha must be >= 0");
}

void check_betas(const SimilaritySet& sims, const Partition& part, const BetaSet& betas) {
    if (sims.n() != part.n()) throw DimensionError("criterion: similarity size != partition size");
    if (static_cast<int>(betas.size()) != part.k)
        throw DimensionError("criterion: beta count != community count");
    for (const auto& b : betas)
        if (b.size() != sims.dim())
            throw DimensionError("criterion: beta dimension != similarity dimension");
}

}  // namespace

double marginal_criterion(const Graph& g, const Partition& part, double alpha) {
    check_inputs(g, part, alpha);
    std::vector<double> within(static_cast<std::size_t>(part.k), 0.0);
    for (int i = 0; i < g.n(); ++i) {
        const int ci = part.labels[static_cast<std::size_t>(i)];
        for (const auto& [j, w] : g.neighbors(i))
            if (j > i && part.labels[static_cast<std::size_t>(j)] == ci)
                within[static_cast<std::size_t>(ci)] += w;
    }
    const std::vector<int> sizes = part.sizes();
    double total = 0.0;
    for (int c = 0; c < part.k; ++c) {
        const int nk = sizes[static_cast<std::size_t>(c)];
        if (nk == 0) continue;  // empty community contributes nothing
        total += 2.0 * within[static_cast<std::size_t>(c)] * std::pow(nk, -alpha);
    }
    return total;
}

CriterionParts decompose_criterion(const Graph& g, const SimilaritySet& sims,
                                   const Partition& part, const BetaSet& betas, double alpha) {
    check_inputs(g, part, alpha);
    check_betas(sims, part, betas);
    std::vector<double> adj(static_cast<std::size_t>(part.k), 0.0);
    std::vector<double> expo(static_cast<std::size_t>(part.k), 0.0);
    for (int i = 0; i < g.n(); ++i) {
        const int ci = part.labels[static_cast<std::size_t>(i)];
        for (const auto& [j, w] : g.neighbors(i)) {
            if (j <= i || part.labels[static_cast<std::size_t>(j)] != ci) continue;
            adj[static_cast<std::size_t>(ci)] += w;
            expo[static_cast<std::size_t>(ci)] +=
                w * clamped_exp(-sims.phi_dot(i, j, betas[static_cast<std::size_t>(ci)]));
        }
    }
    const std::vector<int> sizes = part.sizes();
    CriterionParts parts;
    for (int c = 0; c < part.k; ++c) {
        const int nk = sizes[static_cast<std::size_t>(c)];
        if (nk == 0) continue;
        const double scale = 2.0 * std::pow(nk, -alpha);
        parts.marginal += scale * adj[static_cast<std::size_t>(c)];
        parts.term_g += scale * expo[static_cast<std::size_t>(c)];
    }
    return parts;
}

double jcdc_criterion(const Graph& g, const SimilaritySet& sims, const Partition& part,
                      const BetaSet& betas, double alpha, double w) {
    return decompose_criterion(g, sims, part, betas, alpha).criterion(w);
}

double penalized_objective(const Graph& g, const SimilaritySet& sims, const Partition& part,
                           const BetaSet& betas, double alpha, double w, double lambda) {
    if (lambda < 0.0) throw ConfigError("criterion: lambda must be >= 0");
    double penalty = 0.0;
    for (const auto& b : betas) penalty += b.lpNorm<1>();
    return jcdc_criterion(g, sims, part, betas, alpha, w) - lambda * penalty;
}

}  // namespace jcdc
