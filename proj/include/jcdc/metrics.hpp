#pragma once
// Partition agreement metrics, the confusion-matrix functional g(U), the
// population criterion, and block-model condition checks.

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "jcdc/criterion.hpp"
#include "jcdc/graph.hpp"
#include "jcdc/partition.hpp"
#include "jcdc/rng.hpp"

namespace jcdc {

// Joint label frequencies: U(k, l) = |{i: e_i = k, c_i = l}| / n. Columns are
// the reference labels c, so column sums equal the reference proportions pi.
struct ConfusionMatrix {
    Eigen::MatrixXd u;   // K x K
    Eigen::VectorXd pi;  // column marginals (reference proportions)

    int k() const { return static_cast<int>(u.rows()); }
    Eigen::MatrixXd diag() const { return pi.asDiagonal(); }  // perfect-recovery value
};

// Both partitions padded to a common K (empty communities allowed).
ConfusionMatrix confusion_matrix(const Partition& e, const Partition& c);

// Mutual information normalized by sqrt(H(e) * H(c)), in [0, 1]. Two
// single-cluster partitions agree perfectly (1); if exactly one side is a
// single cluster the score is 0.
double nmi(const Partition& e, const Partition& c);

// Minimum fraction of disagreeing nodes over relabelings of e. Exhaustive
// over permutations for K <= 8, optimal assignment beyond.
double misclassification_distance(const Partition& e, const Partition& c);

// min over permutation matrices of the entrywise l1 distance between U and a
// permuted diag(pi); equals twice the misclassification distance.
double min_permutation_l1(const ConfusionMatrix& cm);

// Block model: P(A_ij = 1) = rho_n * P[c_i][c_j], before degree corrections.
struct BlockModelSpec {
    Eigen::MatrixXd p;   // K x K symmetric block probabilities
    Eigen::VectorXd pi;  // community proportions, positive, summing to 1
    double rho_n = 1.0;

    int k() const { return static_cast<int>(pi.size()); }
    void validate() const;
};

// g(U) = sum_k [sum_{l,l'} U_kl U_kl' P_ll'] / (sum_a U_ka)^alpha; rows with
// zero mass contribute 0.
double g_functional(const ConfusionMatrix& cm, const Eigen::MatrixXd& p, double alpha);
double g_functional(const Eigen::MatrixXd& u, const Eigen::MatrixXd& p, double alpha);

// Draws a standardized similarity vector for a pair of nodes with reference
// classes (a, b). Must be symmetric in (a, b).
using PairSampler = std::function<Eigen::VectorXd(int a, int b, Rng& rng)>;

struct PopulationEstimate {
    double value = 0.0;
    double se = 0.0;
};

// Population version of the criterion: adjacency entries replaced by their
// expectations rho_n * P and edge weights by Monte Carlo estimates of
// E[W(phi, beta_k; w)] per (class pair, community). The double sum runs over
// all ordered pairs including i = j — the population idealization — so the
// normalized value depends only on the confusion structure, P, and E[W].
// Draws use fixed substreams keyed by (class pair, community), independent
// of n.
PopulationEstimate population_criterion(const Partition& e, const Partition& c,
                                        const BetaSet& betas, const BlockModelSpec& spec,
                                        const PairSampler& sampler, double w, double alpha,
                                        int mc_samples, std::uint64_t seed);

struct ConditionReport {
    bool weight_scale_ok = false;  // log w > M_phi * M_beta
    double log_w = 0.0;
    double mphi_mbeta = 0.0;

    bool proportions_ok = false;  // min pi_k >= pi0
    double min_pi = 0.0;
    double pi0 = 0.0;

    bool assortative_ok = false;  // 2(K-1) P_kl < min(P_kk, P_ll) for all k < l
    double worst_ratio = 0.0;     // max 2(K-1) P_kl / min(P_kk, P_ll)

    double alpha_lo = 0.0;  // lower end of the valid alpha range (= worst_ratio)
    bool alpha_ok = false;  // alpha_lo <= alpha <= 1
    bool alpha_boundary = false;  // alpha sits exactly on an endpoint

    bool all_ok() const { return weight_scale_ok && proportions_ok && assortative_ok && alpha_ok; }
};

ConditionReport check_conditions(const BlockModelSpec& spec, double m_phi, double m_beta,
                                 double w, double alpha, double pi0 = 0.05);

struct GSearchResult {
    double diag_value = 0.0;  // g at U = diag(pi)
    double best_value = 0.0;  // best g over the diagonal plus random feasible U
    std::uint64_t best_sample = 0;  // index of the best random sample, if any beat the diagonal
    bool exceeded = false;  // best_value > diag_value + 1e-12
};

// Random search for confusion matrices beating the diagonal: samples U with
// column sums fixed at pi (Dirichlet splits of each column) and tracks the
// largest g(U).
GSearchResult search_g_maximizer(const BlockModelSpec& spec, double alpha, int n_samples,
                                 std::uint64_t seed);

// Concentration trend: for each n, the median over `replicates` block-model
// draws of |R(c, 0; w) / (w * rho * n^{2-alpha}) - g(diag)|, with c the true
// labels and K=2 equal-size communities.
std::vector<double> criterion_deviation_medians(const std::vector<int>& ns, double within_prob,
                                                double out_in_ratio, double w, double alpha,
                                                int replicates, std::uint64_t seed);

}  // namespace jcdc
