#include "jcdc/optimizer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <thread>

#include "jcdc/baselines.hpp"
#include "jcdc/errors.hpp"
#include "jcdc/rng.hpp"

namespace jcdc {

namespace {

// Substream tags so the independent random streams cannot collide.
constexpr std::uint64_t kTagTabuOrder = 0x74b1;
constexpr std::uint64_t kTagPerturb = 0x7e24;
constexpr std::uint64_t kTagInit = 0x1e17;
constexpr std::uint64_t kTagStart = 0x57a2;

double size_scaled(double sum, int size, double alpha) {
    return size > 0 ? sum * std::pow(size, -alpha) : 0.0;
}

}  // namespace

void FitConfig::validate(int n) const {
    if (k < 1) throw ConfigError("fit: k must be >= 1");
    if (k > n) throw ConfigError("fit: more communities than nodes");
    if (!(alpha >= 0.0) || alpha > 1.0) throw ConfigError("fit: alpha must be in [0, 1]");
    if (!std::isfinite(w)) throw ConfigError("fit: w must be finite");
    if (min_community_size < 0) throw ConfigError("fit: min_community_size must be >= 0");
    if (static_cast<long long>(k) * min_community_size > n)
        throw ConfigError("fit: k * min_community_size exceeds node count");
    if (max_outer_iters < 1) throw ConfigError("fit: max_outer_iters must be >= 1");
    if (threads < 1) throw ConfigError("fit: threads must be >= 1");
    if (tabu.tenure < 0) throw ConfigError("fit: tabu tenure must be >= 0");
    if (tabu.max_sweeps < 1) throw ConfigError("fit: tabu max_sweeps must be >= 1");
    if (tabu.restarts < 1) throw ConfigError("fit: tabu restarts must be >= 1");
    if (tabu.perturb_prob < 0.0 || tabu.perturb_prob > 1.0)
        throw ConfigError("fit: perturb_prob must be in [0, 1]");
    if (ascent.lambda < 0.0) throw ConfigError("fit: lambda must be >= 0");
    if (!(ascent.m_beta > 0.0)) throw ConfigError("fit: m_beta must be > 0");
    if (ascent.max_iters < 1) throw ConfigError("fit: ascent max_iters must be >= 1");
}

// ---------------------------------------------------------------------------
// SwitchState

SwitchState::SwitchState(const Graph& g, const SimilaritySet& sims, const Partition& part,
                         const BetaSet& betas, double w)
    : g_(g), sims_(sims), betas_(betas), w_(w), part_(part) {
    part_.validate();
    if (part_.n() != g.n()) throw DimensionError("switch state: partition size != graph size");
    if (sims.n() != g.n()) throw DimensionError("switch state: similarity size != graph size");
    if (static_cast<int>(betas.size()) != part_.k)
        throw DimensionError("switch state: beta count != community count");

    const int n = g.n();
    const int k = part_.k;
    sizes_ = part_.sizes();
    internal_.assign(static_cast<std::size_t>(k), 0.0);
    cross_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(k), 0.0);

    for (int i = 0; i < n; ++i) {
        const int ci = part_.labels[static_cast<std::size_t>(i)];
        for (const auto& [j, a] : g.neighbors(i)) {
            const int cj = part_.labels[static_cast<std::size_t>(j)];
            const double wij =
                a * edge_weight(w_, sims_.phi_dot(i, j, betas_[static_cast<std::size_t>(cj)]));
            cross_[static_cast<std::size_t>(i) * static_cast<std::size_t>(k) +
                   static_cast<std::size_t>(cj)] += wij;
            if (cj == ci && j > i) {
                // Ordered pairs: each undirected internal edge counts twice.
                internal_[static_cast<std::size_t>(ci)] += 2.0 * wij;
            }
        }
    }
}

double SwitchState::criterion(double alpha) const {
    double total = 0.0;
    for (int c = 0; c < part_.k; ++c)
        total += size_scaled(internal_[static_cast<std::size_t>(c)],
                             sizes_[static_cast<std::size_t>(c)], alpha);
    return total;
}

void SwitchState::move(int i, int target) {
    const int k = part_.k;
    const int from = part_.labels[static_cast<std::size_t>(i)];
    if (target == from) return;
    if (target < 0 || target >= k) throw ConfigError("switch state: target community out of range");

    for (const auto& [j, a] : g_.neighbors(i)) {
        const double w_from =
            a * edge_weight(w_, sims_.phi_dot(i, j, betas_[static_cast<std::size_t>(from)]));
        const double w_to =
            a * edge_weight(w_, sims_.phi_dot(i, j, betas_[static_cast<std::size_t>(target)]));
        double* row = cross_.data() + static_cast<std::size_t>(j) * static_cast<std::size_t>(k);
        row[from] -= w_from;
        row[target] += w_to;
        const int cj = part_.labels[static_cast<std::size_t>(j)];
        if (cj == from) internal_[static_cast<std::size_t>(from)] -= 2.0 * w_from;
        if (cj == target) internal_[static_cast<std::size_t>(target)] += 2.0 * w_to;
    }
    sizes_[static_cast<std::size_t>(from)]--;
    sizes_[static_cast<std::size_t>(target)]++;
    part_.labels[static_cast<std::size_t>(i)] = target;
}

double exact_switch_preference(const SwitchState& state, int i, int k, int l, double alpha) {
    if (k == l) return 0.0;
    const double s_kk = state.internal_sum(k);
    const double s_ll = state.internal_sum(l);
    const double s_ik = state.cross_sum(i, k);
    const double s_il = state.cross_sum(i, l);
    const int nk = state.sizes()[static_cast<std::size_t>(k)];      // i not a member
    const int nl = state.sizes()[static_cast<std::size_t>(l)] - 1;  // l without i
    const double s_ll_excl = s_ll - 2.0 * s_il;                     // l's internal sum without i

    const double after = size_scaled(s_kk + 2.0 * s_ik, nk + 1, alpha) +
                         size_scaled(s_ll_excl, nl, alpha);
    const double before = size_scaled(s_kk, nk, alpha) +
                          size_scaled(s_ll_excl + 2.0 * s_il, nl + 1, alpha);
    return after - before;
}

double approx_switch_preference(const SwitchState& state, int i, int k, int l, double alpha) {
    if (k == l) return 0.0;
    const int nk = state.sizes()[static_cast<std::size_t>(k)];
    const int nl = state.sizes()[static_cast<std::size_t>(l)];
    if (nk == 0) return exact_switch_preference(state, i, k, l, alpha);
    return (state.cross_sum(i, k) / nk) *
               std::pow(static_cast<double>(nk) / static_cast<double>(nl), 1.0 - alpha) -
           state.cross_sum(i, l) / nl;
}

// ---------------------------------------------------------------------------
// Tabu label search

namespace {

// Move nodes from the largest communities into any community below the size
// floor. Deterministic: donors are the largest community (lowest index on
// ties); the donated node is the lowest-index member.
void repair_min_sizes(Partition& part, int min_size) {
    if (min_size <= 0) return;
    std::vector<int> sizes = part.sizes();
    for (int c = 0; c < part.k; ++c) {
        while (sizes[static_cast<std::size_t>(c)] < min_size) {
            int donor = -1;
            for (int d = 0; d < part.k; ++d) {
                if (sizes[static_cast<std::size_t>(d)] <= min_size) continue;
                if (donor < 0 || sizes[static_cast<std::size_t>(d)] > sizes[static_cast<std::size_t>(donor)])
                    donor = d;
            }
            if (donor < 0) throw ConfigError("cannot satisfy min_community_size");
            for (std::size_t i = 0; i < part.labels.size(); ++i) {
                if (part.labels[i] == donor) {
                    part.labels[i] = c;
                    break;
                }
            }
            sizes[static_cast<std::size_t>(donor)]--;
            sizes[static_cast<std::size_t>(c)]++;
        }
    }
}

Partition perturb_partition(const Partition& base, double prob, Rng& rng) {
    Partition out = base;
    for (std::size_t i = 0; i < out.labels.size(); ++i)
        if (rng.uniform01() < prob)
            out.labels[i] = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(out.k)));
    return out;
}

Partition tabu_single_run(const Graph& g, const SimilaritySet& sims, const Partition& start,
                          const BetaSet& betas, const FitConfig& config, std::uint64_t order_seed) {
    const int n = g.n();
    const int kk = config.k;
    SwitchState state(g, sims, start, betas, config.w);

    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    Rng rng(order_seed);
    rng.shuffle(order);  // one fixed sweep order per run

    std::vector<int> tabu_until(static_cast<std::size_t>(n), 0);
    for (int sweep = 0; sweep < config.tabu.max_sweeps; ++sweep) {
        bool moved = false;
        for (int i : order) {
            if (sweep < tabu_until[static_cast<std::size_t>(i)]) continue;
            const int l = state.partition().labels[static_cast<std::size_t>(i)];
            if (state.sizes()[static_cast<std::size_t>(l)] - 1 < config.min_community_size)
                continue;  // departure would break the size floor
            int best_k = -1;
            double best_gain = 0.0;  // strict improvement required
            for (int k = 0; k < kk; ++k) {
                if (k == l) continue;
                const double gain = exact_switch_preference(state, i, k, l, config.alpha);
                if (gain > best_gain) {
                    best_gain = gain;
                    best_k = k;
                }
            }
            if (best_k >= 0) {
                state.move(i, best_k);
                tabu_until[static_cast<std::size_t>(i)] = sweep + 1 + config.tabu.tenure;
                moved = true;
            }
        }
        if (!moved) break;
    }
    return state.partition();
}

}  // namespace

Partition tabu_label_search(const Graph& g, const SimilaritySet& sims, const Partition& init,
                            const BetaSet& betas, const FitConfig& config) {
    config.validate(g.n());
    init.validate();
    if (init.n() != g.n()) throw DimensionError("tabu: partition size != graph size");
    if (init.k != config.k) throw DimensionError("tabu: partition k != config k");
    const int restarts = config.tabu.restarts;

    std::vector<Partition> starts;
    starts.reserve(static_cast<std::size_t>(restarts));
    {
        Partition base = init;
        repair_min_sizes(base, config.min_community_size);
        starts.push_back(std::move(base));
    }
    for (int r = 1; r < restarts; ++r) {
        Rng rng(substream_key(config.seed, {kTagPerturb, static_cast<std::uint64_t>(r)}));
        Partition p = perturb_partition(starts[0], config.tabu.perturb_prob, rng);
        repair_min_sizes(p, config.min_community_size);
        starts.push_back(std::move(p));
    }

    std::vector<Partition> results(static_cast<std::size_t>(restarts));
    auto run_range = [&](int begin, int end) {
        for (int r = begin; r < end; ++r)
            results[static_cast<std::size_t>(r)] =
                tabu_single_run(g, sims, starts[static_cast<std::size_t>(r)], betas, config,
                                substream_key(config.seed, {kTagTabuOrder, static_cast<std::uint64_t>(r)}));
    };
    const int workers = std::min(config.threads, restarts);
    if (workers <= 1) {
        run_range(0, restarts);
    } else {
        std::vector<std::thread> pool;
        const int chunk = (restarts + workers - 1) / workers;
        for (int t = 0; t < workers; ++t) {
            const int begin = t * chunk;
            const int end = std::min(restarts, begin + chunk);
            if (begin < end) pool.emplace_back(run_range, begin, end);
        }
        for (auto& th : pool) th.join();
    }

    int best = 0;
    double best_value = -std::numeric_limits<double>::infinity();
    for (int r = 0; r < restarts; ++r) {
        const double value =
            jcdc_criterion(g, sims, results[static_cast<std::size_t>(r)], betas, config.alpha, config.w);
        if (value > best_value) {  // ties keep the lowest restart index
            best_value = value;
            best = r;
        }
    }
    return results[static_cast<std::size_t>(best)];
}

// ---------------------------------------------------------------------------
// Coefficient ascent

namespace {

struct CommunityEdges {
    std::vector<int> src, dst;
    std::vector<double> weight;
    double coef = 0.0;  // 2 * n_c^{-alpha}; the 2 folds in the ordered-pair count
};

CommunityEdges collect_edges(const Graph& g, const Partition& part, int community, double alpha) {
    CommunityEdges ce;
    for (int i = 0; i < g.n(); ++i) {
        if (part.labels[static_cast<std::size_t>(i)] != community) continue;
        for (const auto& [j, a] : g.neighbors(i)) {
            if (j <= i || part.labels[static_cast<std::size_t>(j)] != community) continue;
            ce.src.push_back(i);
            ce.dst.push_back(j);
            ce.weight.push_back(a);
        }
    }
    const int size = part.sizes()[static_cast<std::size_t>(community)];
    ce.coef = size > 0 ? 2.0 * std::pow(size, -alpha) : 0.0;
    return ce;
}

double smooth_value(const CommunityEdges& ce, const SimilaritySet& sims,
                    const Eigen::VectorXd& beta) {
    double sum = 0.0;
    for (std::size_t e = 0; e < ce.src.size(); ++e)
        sum += ce.weight[e] *
               clamped_exp(-sims.phi_dot(ce.src[e], ce.dst[e], beta));
    return -ce.coef * sum;
}

Eigen::VectorXd smooth_gradient(const CommunityEdges& ce, const SimilaritySet& sims,
                                const Eigen::VectorXd& beta) {
    Eigen::VectorXd grad = Eigen::VectorXd::Zero(beta.size());
    for (std::size_t e = 0; e < ce.src.size(); ++e) {
        const double scale =
            ce.weight[e] * clamped_exp(-sims.phi_dot(ce.src[e], ce.dst[e], beta));
        grad += scale * sims.phi(ce.src[e], ce.dst[e]);
    }
    return ce.coef * grad;
}

Eigen::VectorXd prox_step(const Eigen::VectorXd& beta, const Eigen::VectorXd& grad, double t,
                          double lambda, double m_beta) {
    Eigen::VectorXd z = beta + t * grad;
    for (Eigen::Index d = 0; d < z.size(); ++d) {
        const double shrink = std::abs(z(d)) - t * lambda;  // soft threshold
        z(d) = shrink > 0.0 ? (z(d) > 0.0 ? shrink : -shrink) : 0.0;
    }
    const double norm = z.norm();
    if (norm > m_beta) z *= m_beta / norm;  // project onto the l2 ball
    return z;
}

Eigen::VectorXd ascend_one(const CommunityEdges& ce, const SimilaritySet& sims,
                           const Eigen::VectorXd& init, const AscentConfig& config) {
    const double lambda = config.lambda;
    Eigen::VectorXd beta = init;
    if (beta.norm() > config.m_beta) beta *= config.m_beta / beta.norm();

    auto objective = [&](const Eigen::VectorXd& b) {
        return smooth_value(ce, sims, b) - lambda * b.lpNorm<1>();
    };

    double obj = objective(beta);
    double t = 1.0;
    for (int iter = 0; iter < config.max_iters; ++iter) {
        const Eigen::VectorXd grad = smooth_gradient(ce, sims, beta);
        Eigen::VectorXd z;
        double z_obj;
        bool accepted = false;
        while (t >= 1e-14) {
            z = prox_step(beta, grad, t, lambda, config.m_beta);
            z_obj = objective(z);
            if (z_obj >= obj) {  // monotone backtracking
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if (!accepted) break;  // no ascent direction left at any usable step
        const double displacement = (z - beta).norm();
        beta = z;
        obj = z_obj;
        if (displacement / t <= config.tol) break;
        t = std::min(t * 2.0, 1e6);  // cautiously regrow the step
    }
    return beta;
}

}  // namespace

double beta_smooth_value(const Graph& g, const SimilaritySet& sims, const Partition& part,
                         int community, const Eigen::VectorXd& beta, double alpha) {
    return smooth_value(collect_edges(g, part, community, alpha), sims, beta);
}

Eigen::VectorXd beta_smooth_gradient(const Graph& g, const SimilaritySet& sims,
                                     const Partition& part, int community,
                                     const Eigen::VectorXd& beta, double alpha) {
    return smooth_gradient(collect_edges(g, part, community, alpha), sims, beta);
}

BetaSet optimize_betas(const Graph& g, const SimilaritySet& sims, const Partition& part,
                       const BetaSet& init, const FitConfig& config) {
    config.validate(g.n());
    part.validate();
    if (part.n() != g.n()) throw DimensionError("optimize_betas: partition size != graph size");
    if (part.k != config.k) throw DimensionError("optimize_betas: partition k != config k");
    if (static_cast<int>(init.size()) != part.k)
        throw DimensionError("optimize_betas: beta count != community count");

    BetaSet out(init.size());
    for (int c = 0; c < part.k; ++c) {
        const CommunityEdges ce = collect_edges(g, part, c, config.alpha);
        if (ce.src.empty()) {
            // Objective is constant in beta: only the penalty remains.
            out[static_cast<std::size_t>(c)] = Eigen::VectorXd::Zero(sims.dim());
            continue;
        }
        out[static_cast<std::size_t>(c)] =
            ascend_one(ce, sims, init[static_cast<std::size_t>(c)], config.ascent);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Alternating fit

namespace {

// One full block-coordinate pass from a fixed start: a label search at the
// current coefficients, then a coefficient refit, until both stabilize.
FitResult run_alternation(const Graph& g, const SimilaritySet& sims, const FitConfig& config,
                          Partition part, BetaSet betas) {
    FitResult result;
    double prev = penalized_objective(g, sims, part, betas, config.alpha, config.w,
                                      config.ascent.lambda);
    for (int outer = 0; outer < config.max_outer_iters; ++outer) {
        Partition next = tabu_label_search(g, sims, part, betas, config);
        betas = optimize_betas(g, sims, next, betas, config);
        const double obj = penalized_objective(g, sims, next, betas, config.alpha, config.w,
                                               config.ascent.lambda);
        result.trace.push_back(obj);
        result.iterations = outer + 1;
        const bool labels_stable = next == part;
        const double gain = obj - prev;
        part = std::move(next);
        prev = obj;
        if (labels_stable && gain < config.outer_tol) {
            result.converged = true;
            break;
        }
    }
    result.partition = std::move(part);
    result.betas = std::move(betas);
    result.objective = prev;
    return result;
}

// A starting partition for one independent alternation. A warm start fits
// the coefficients to its initial labels before the first label pass;
// without that, an informative start would be erased at beta = 0 whenever
// the bare network signal points elsewhere.
struct FitStart {
    Partition part;
    bool warm_betas;
};

Partition balanced_random_labels(int n, int k, std::uint64_t seed) {
    std::vector<int> labels(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < labels.size(); ++i)
        labels[i] = static_cast<int>(i % static_cast<std::size_t>(k));
    Rng rng(seed);
    rng.shuffle(labels);
    return Partition(k, std::move(labels));
}

// Primary initialization: the spectral baseline, falling back to balanced
// random labels when the embedding cannot be computed.
Partition spectral_or_random_init(const Graph& g, const FitConfig& config) {
    SpectralConfig sc;
    sc.k = config.k;
    sc.seed = substream_key(config.seed, {kTagInit});
    try {
        return spectral_clustering(g, sc);
    } catch (const std::exception&) {
        return balanced_random_labels(g.n(), config.k, substream_key(config.seed, {kTagInit, 1}));
    }
}

// Runs one alternation per start and keeps the best penalized objective,
// ties to the earliest start. Starts after the first get their own seed
// substreams so their label searches explore independently.
FitResult best_over_starts(const Graph& g, const SimilaritySet& sims, const FitConfig& config,
                           std::vector<FitStart> starts) {
    FitResult best;
    bool have = false;
    for (std::size_t s = 0; s < starts.size(); ++s) {
        FitConfig local = config;
        if (s > 0)
            local.seed = substream_key(config.seed, {kTagStart, static_cast<std::uint64_t>(s)});
        Partition part = std::move(starts[s].part);
        repair_min_sizes(part, config.min_community_size);
        BetaSet betas = zero_betas(config.k, sims.dim());
        if (starts[s].warm_betas) betas = optimize_betas(g, sims, part, betas, local);
        FitResult result = run_alternation(g, sims, local, std::move(part), std::move(betas));
        if (std::getenv("JCDC_DEBUG_STARTS") != nullptr) {
            std::fprintf(stderr, "start %zu: obj=%.4f sizes", s, result.objective);
            std::vector<int> size(static_cast<std::size_t>(config.k), 0);
            for (int lbl : result.partition.labels) size[static_cast<std::size_t>(lbl)] += 1;
            for (int c : size) std::fprintf(stderr, " %d", c);
            std::fprintf(stderr, "\n");
        }
        if (!have || result.objective > best.objective) {
            have = true;
            best = std::move(result);
        }
    }
    return best;
}

}  // namespace

FitResult fit(const Graph& g, const SimilaritySet& sims, const FitConfig& config,
              const Partition* init) {
    const auto t0 = std::chrono::steady_clock::now();
    config.validate(g.n());
    if (sims.n() != g.n()) throw DimensionError("fit: similarity size != graph size");

    std::vector<FitStart> starts;
    if (init != nullptr) {
        Partition part = *init;
        part.validate();
        if (part.n() != g.n() || part.k != config.k)
            throw DimensionError("fit: bad initial partition shape");
        // A caller-chosen start is authoritative: refine it, don't discard it.
        starts.push_back({std::move(part), true});
    } else {
        starts.push_back({spectral_or_random_init(g, config), false});
    }
    FitResult result = best_over_starts(g, sims, config, std::move(starts));
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

FitResult fit(const Graph& g, const FeatureTable& features, const FitConfig& config) {
    const auto t0 = std::chrono::steady_clock::now();
    config.validate(g.n());
    const FeatureTable expanded = expand_categoricals(features);
    const SimilaritySet sims = build_similarities(expanded);

    std::vector<FitStart> starts;
    starts.push_back({spectral_or_random_init(g, config), false});
    // Feature-space clustering seeds an alternation of its own: when the
    // network is weak but the features separate the communities, this is
    // the start that lands in the right basin.
    try {
        KmeansConfig kc;
        kc.k = config.k;
        kc.seed = substream_key(config.seed, {kTagInit, 3});
        starts.push_back({kmeans_partition(expanded, kc), true});
    } catch (const std::exception&) {
        // Feature table unusable for clustering: skip this start.
    }
    FitResult result = best_over_starts(g, sims, config, std::move(starts));
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

// ---------------------------------------------------------------------------
// Exhaustive oracle

std::pair<Partition, double> exhaustive_oracle(const Graph& g, const SimilaritySet& sims,
                                               const BetaSet& betas, const FitConfig& config,
                                               int max_n) {
    const int n = g.n();
    if (n > max_n)
        throw ConfigError("exhaustive oracle: n=" + std::to_string(n) + " exceeds cap " +
                          std::to_string(max_n));
    config.validate(n);
    const int kk = config.k;

    bool exchangeable = true;
    for (std::size_t c = 1; c < betas.size(); ++c)
        if (betas[c] != betas[0]) exchangeable = false;

    Partition best(kk, std::vector<int>(static_cast<std::size_t>(n), 0));
    double best_value = -std::numeric_limits<double>::infinity();
    bool found = false;
    std::vector<int> labels(static_cast<std::size_t>(n), 0);

    auto consider = [&]() {
        std::vector<int> sizes(static_cast<std::size_t>(kk), 0);
        for (int lab : labels) sizes[static_cast<std::size_t>(lab)]++;
        for (int s : sizes)
            if (s < config.min_community_size) return;
        Partition part(kk, labels);
        const double value = jcdc_criterion(g, sims, part, betas, config.alpha, config.w);
        if (!found || value > best_value) {
            found = true;
            best_value = value;
            best = std::move(part);
        }
    };

    if (exchangeable) {
        // Identical coefficients make the criterion relabeling-invariant, so
        // canonical (first-occurrence-ordered) labelings cover everything.
        auto recurse = [&](auto&& self, int i, int used) -> void {
            if (i == n) {
                consider();
                return;
            }
            const int limit = std::min(kk - 1, used);
            for (int lab = 0; lab <= limit; ++lab) {
                labels[static_cast<std::size_t>(i)] = lab;
                self(self, i + 1, std::max(used, lab + 1));
            }
        };
        recurse(recurse, 0, 0);
    } else {
        auto recurse = [&](auto&& self, int i) -> void {
            if (i == n) {
                consider();
                return;
            }
            for (int lab = 0; lab < kk; ++lab) {
                labels[static_cast<std::size_t>(i)] = lab;
                self(self, i + 1);
            }
        };
        recurse(recurse, 0);
    }

    if (!found) throw ConfigError("exhaustive oracle: no labeling satisfies min_community_size");
    return {std::move(best), best_value};
}

}  // namespace jcdc
