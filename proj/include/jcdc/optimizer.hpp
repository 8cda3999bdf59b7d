#pragma once
// Alternating maximization of the criterion: tabu label switching with exact
// local deltas for fixed coefficients, projected gradient ascent with an l1
// penalty for fixed labels, and an exhaustive small-n oracle for testing.

#include <cstdint>
#include <utility>
#include <vector>

#include "jcdc/criterion.hpp"
#include "jcdc/features.hpp"
#include "jcdc/graph.hpp"
#include "jcdc/partition.hpp"

namespace jcdc {

struct TabuConfig {
    int tenure = 3;         // sweeps a moved node stays frozen
    int max_sweeps = 50;    // per restart
    int restarts = 5;       // restart 0 starts from the given labels
    double perturb_prob = 0.1;  // per-node relabel chance for restarts > 0
};

struct AscentConfig {
    double lambda = 1e-5;  // l1 penalty weight
    double m_beta = 5.0;   // l2-ball radius for each beta_k
    int max_iters = 500;
    double tol = 1e-8;  // on the step-scaled prox displacement
};

struct FitConfig {
    int k = 2;
    double alpha = 1.0;
    double w = 5.0;
    int min_community_size = 1;
    std::uint64_t seed = 0;
    int max_outer_iters = 20;
    double outer_tol = 1e-8;
    int threads = 1;  // parallel tabu restarts; results independent of this
    TabuConfig tabu;
    AscentConfig ascent;

    void validate(int n) const;
};

struct FitResult {
    Partition partition;
    BetaSet betas;
    std::vector<double> trace;  // penalized objective after each outer iteration
    double objective = 0.0;     // final penalized objective
    int iterations = 0;
    bool converged = false;
    double seconds = 0.0;
};

// Incremental bookkeeping for single-node label switches under frozen betas.
// Tracks, per community, the weighted internal sum over ordered pairs and,
// per (node, community), the weighted sum of that node's edges into the
// community. All weights use the target community's coefficients.
class SwitchState {
  public:
    SwitchState(const Graph& g, const SimilaritySet& sims, const Partition& part,
                const BetaSet& betas, double w);

    const Partition& partition() const { return part_; }
    const std::vector<int>& sizes() const { return sizes_; }

    // S_kk: ordered-pair weighted sum inside community c (twice the
    // undirected total).
    double internal_sum(int c) const { return internal_[static_cast<std::size_t>(c)]; }

    // S_{i<->c}: weighted sum of i's edges to current members of c other
    // than i itself.
    double cross_sum(int i, int c) const {
        return cross_[static_cast<std::size_t>(i) * static_cast<std::size_t>(part_.k) +
                      static_cast<std::size_t>(c)];
    }

    // Criterion value implied by the current sums.
    double criterion(double alpha) const;

    // Relabel node i to community target, updating all sums incrementally.
    void move(int i, int target);

  private:
    const Graph& g_;
    const SimilaritySet& sims_;
    const BetaSet& betas_;
    double w_;
    Partition part_;
    std::vector<int> sizes_;
    std::vector<double> internal_;  // per community
    std::vector<double> cross_;     // n x K row-major
};

// Criterion change from moving node i (currently in l) to community k, as a
// literal before/after difference. Positive means the move improves. The
// community sizes in the rescaling exponents are taken with i excluded from
// both k and l, so the expression telescopes against the full criterion.
double exact_switch_preference(const SwitchState& state, int i, int k, int l, double alpha);

// Large-community approximation of the same preference:
//   (S_{i<->k}/n_k) * (n_k/n_l)^{1-alpha} - S_{i<->l}/n_l.
// Falls back to the exact form when the target community is empty.
double approx_switch_preference(const SwitchState& state, int i, int k, int l, double alpha);

// Greedy label switching with per-node tabu tenure and perturbed restarts.
// Coefficients stay frozen. Returns the best partition over restarts by
// criterion value (ties: lowest restart index). Every accepted move strictly
// increases the criterion, and no community ever shrinks below
// min_community_size.
Partition tabu_label_search(const Graph& g, const SimilaritySet& sims, const Partition& init,
                            const BetaSet& betas, const FitConfig& config);

// Per-community concave maximization of the exp part minus the l1 penalty
// over the l2 ball of radius m_beta, by proximal gradient ascent with
// backtracking. The w-dependent part of the criterion is constant in beta and
// is dropped, so the result does not depend on w. Communities with no
// internal edges get beta = 0.
BetaSet optimize_betas(const Graph& g, const SimilaritySet& sims, const Partition& part,
                       const BetaSet& init, const FitConfig& config);

// Smooth (unpenalized, w-free) part of one community's coefficient objective,
//   -n_c^{-alpha} * sum over ordered internal pairs of A_ij exp(-<phi, beta>),
// and its analytic gradient. Exposed so tests can verify the calculus.
double beta_smooth_value(const Graph& g, const SimilaritySet& sims, const Partition& part,
                         int community, const Eigen::VectorXd& beta, double alpha);
Eigen::VectorXd beta_smooth_gradient(const Graph& g, const SimilaritySet& sims,
                                     const Partition& part, int community,
                                     const Eigen::VectorXd& beta, double alpha);

// Full alternating fit: similarity construction is the caller's job; labels
// start from `init` if given, otherwise from spectral clustering (random
// balanced fallback); betas start at zero. Alternates label search and
// coefficient ascent until labels stop changing and the penalized objective
// improves by less than outer_tol.
FitResult fit(const Graph& g, const SimilaritySet& sims, const FitConfig& config,
              const Partition* init = nullptr);

// Convenience overload: builds similarities from a raw feature table.
FitResult fit(const Graph& g, const FeatureTable& features, const FitConfig& config);

// Exhaustive maximization over labelings (up to community relabeling) that
// keep every community at min_community_size or larger. Betas are frozen.
// Refuses n > max_n.
std::pair<Partition, double> exhaustive_oracle(const Graph& g, const SimilaritySet& sims,
                                               const BetaSet& betas, const FitConfig& config,
                                               int max_n = 12);

}  // namespace jcdc
