#pragma once
// The joint community/covariate criterion and its building blocks.
//
// For a partition e into K communities and per-community coefficient vectors
// beta_k, the criterion over a graph with adjacency A and standardized pair
// similarities phi is
//
//   R(e, beta; w) = sum_k n_k^{-alpha} * sum_{i != j, both in k} A_ij * W_ij
//   W_ij          = w - exp(-<phi(i,j), beta_k>)
//
// Ordered pairs: every undirected edge inside a community is counted twice.
// An empty community contributes zero. The exponential argument is clamped to
// [-50, 50] so extreme coefficients saturate instead of overflowing.
//
// Useful identity: R splits as w * marginal - g where the marginal part drops
// beta entirely and g collects the exp terms; g does not depend on w.

#include <Eigen/Dense>
#include <vector>

#include "jcdc/features.hpp"
#include "jcdc/graph.hpp"
#include "jcdc/partition.hpp"

namespace jcdc {

// One coefficient vector per community, all of the similarity dimension.
using BetaSet = std::vector<Eigen::VectorXd>;

BetaSet zero_betas(int k, int dim);

inline constexpr double kExpClamp = 50.0;

// exp(x) with the argument clamped to [-kExpClamp, kExpClamp].
double clamped_exp(double x);

// Edge weight W = w - exp(-dot) for a pair with inner product dot.
double edge_weight(double w, double dot);

// beta-free part: sum_k n_k^{-alpha} * (adjacency mass inside k, ordered pairs).
double marginal_criterion(const Graph& g, const Partition& part, double alpha);

struct CriterionParts {
    double marginal = 0.0;  // beta-free adjacency part
    double term_g = 0.0;    // exp part; independent of w

    double criterion(double w) const { return w * marginal - term_g; }
};

CriterionParts decompose_criterion(const Graph& g, const SimilaritySet& sims,
                                   const Partition& part, const BetaSet& betas, double alpha);

// Full criterion R(e, beta; w). Computed via the w*marginal - g split so the
// decomposition identity holds exactly.
double jcdc_criterion(const Graph& g, const SimilaritySet& sims, const Partition& part,
                      const BetaSet& betas, double alpha, double w);

// R minus the l1 penalty lambda * sum_k ||beta_k||_1.
double penalized_objective(const Graph& g, const SimilaritySet& sims, const Partition& part,
                           const BetaSet& betas, double alpha, double w, double lambda);

}  // namespace jcdc
