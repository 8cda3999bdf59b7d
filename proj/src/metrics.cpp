#include "jcdc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "jcdc/errors.hpp"

namespace jcdc {

namespace {

constexpr std::uint64_t kTagGSearch = 0x675e;
constexpr std::uint64_t kTagPopulation = 0x9095;
constexpr std::uint64_t kTagTrend = 0x7e9d;

void check_same_n(const Partition& e, const Partition& c, const char* who) {
    e.validate();
    c.validate();
    if (e.n() != c.n()) throw DimensionError(std::string(who) + ": partitions differ in length");
}

// Count matrix N(k, l) = |{i: e_i = k, c_i = l}| padded to a common K.
Eigen::MatrixXd count_matrix(const Partition& e, const Partition& c) {
    const int k = std::max(e.k, c.k);
    Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(k, k);
    for (int i = 0; i < e.n(); ++i)
        counts(e.labels[static_cast<std::size_t>(i)], c.labels[static_cast<std::size_t>(i)]) += 1.0;
    return counts;
}

// Maximum-total-score assignment of rows to columns (square matrix),
// potentials-based shortest augmenting path on the negated scores.
double max_assignment(const Eigen::MatrixXd& score) {
    const int n = static_cast<int>(score.rows());
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(static_cast<std::size_t>(n) + 1, 0.0), v(static_cast<std::size_t>(n) + 1, 0.0);
    std::vector<int> match(static_cast<std::size_t>(n) + 1, 0), way(static_cast<std::size_t>(n) + 1, 0);
    for (int i = 1; i <= n; ++i) {
        match[0] = i;
        int j0 = 0;
        std::vector<double> minv(static_cast<std::size_t>(n) + 1, inf);
        std::vector<bool> used(static_cast<std::size_t>(n) + 1, false);
        do {
            used[static_cast<std::size_t>(j0)] = true;
            const int i0 = match[static_cast<std::size_t>(j0)];
            int j1 = -1;
            double delta = inf;
            for (int j = 1; j <= n; ++j) {
                if (used[static_cast<std::size_t>(j)]) continue;
                const double cur = -score(i0 - 1, j - 1) - u[static_cast<std::size_t>(i0)] -
                                   v[static_cast<std::size_t>(j)];
                if (cur < minv[static_cast<std::size_t>(j)]) {
                    minv[static_cast<std::size_t>(j)] = cur;
                    way[static_cast<std::size_t>(j)] = j0;
                }
                if (minv[static_cast<std::size_t>(j)] < delta) {
                    delta = minv[static_cast<std::size_t>(j)];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[static_cast<std::size_t>(j)]) {
                    u[static_cast<std::size_t>(match[static_cast<std::size_t>(j)])] += delta;
                    v[static_cast<std::size_t>(j)] -= delta;
                } else {
                    minv[static_cast<std::size_t>(j)] -= delta;
                }
            }
            j0 = j1;
        } while (match[static_cast<std::size_t>(j0)] != 0);
        do {
            const int j1 = way[static_cast<std::size_t>(j0)];
            match[static_cast<std::size_t>(j0)] = match[static_cast<std::size_t>(j1)];
            j0 = j1;
        } while (j0 != 0);
    }
    double total = 0.0;
    for (int j = 1; j <= n; ++j) total += score(match[static_cast<std::size_t>(j)] - 1, j - 1);
    return total;
}

}  // namespace

ConfusionMatrix confusion_matrix(const Partition& e, const Partition& c) {
    check_same_n(e, c, "confusion");
    ConfusionMatrix cm;
    cm.u = count_matrix(e, c) / static_cast<double>(e.n());
    cm.pi = cm.u.colwise().sum();
    return cm;
}

double nmi(const Partition& e, const Partition& c) {
    check_same_n(e, c, "nmi");
    const Eigen::MatrixXd counts = count_matrix(e, c);
    const double n = static_cast<double>(e.n());
    const Eigen::VectorXd row = counts.rowwise().sum();
    const Eigen::VectorXd col = counts.colwise().sum();

    double h_e = 0.0, h_c = 0.0, mi = 0.0;
    for (int k = 0; k < counts.rows(); ++k)
        if (row(k) > 0.0) h_e -= row(k) / n * std::log(row(k) / n);
    for (int l = 0; l < counts.cols(); ++l)
        if (col(l) > 0.0) h_c -= col(l) / n * std::log(col(l) / n);
    for (int k = 0; k < counts.rows(); ++k)
        for (int l = 0; l < counts.cols(); ++l)
            if (counts(k, l) > 0.0)
                mi += counts(k, l) / n * std::log(n * counts(k, l) / (row(k) * col(l)));

    if (h_e == 0.0 && h_c == 0.0) return 1.0;  // two single-cluster partitions agree
    if (h_e == 0.0 || h_c == 0.0) return 0.0;
    return std::clamp(mi / std::sqrt(h_e * h_c), 0.0, 1.0);
}

double misclassification_distance(const Partition& e, const Partition& c) {
    check_same_n(e, c, "misclassification");
    const Eigen::MatrixXd counts = count_matrix(e, c);
    const int k = static_cast<int>(counts.rows());
    const double n = static_cast<double>(e.n());

    double best_agree;
    if (k <= 8) {
        std::vector<int> perm(static_cast<std::size_t>(k));
        std::iota(perm.begin(), perm.end(), 0);
        best_agree = 0.0;
        do {
            double agree = 0.0;
            for (int l = 0; l < k; ++l) agree += counts(perm[static_cast<std::size_t>(l)], l);
            best_agree = std::max(best_agree, agree);
        } while (std::next_permutation(perm.begin(), perm.end()));
    } else {
        best_agree = max_assignment(counts);
    }
    return (n - best_agree) / n;
}

double min_permutation_l1(const ConfusionMatrix& cm) {
    const int k = cm.k();
    // For the alignment sigma (reference label l matched to row sigma(l)) the
    // l1 gap is sum_l [pi_l - U(sigma(l), l)] * 2, so minimizing it is the
    // same assignment problem as maximizing the matched mass.
    double best = std::numeric_limits<double>::infinity();
    if (k <= 8) {
        std::vector<int> perm(static_cast<std::size_t>(k));
        std::iota(perm.begin(), perm.end(), 0);
        do {
            double total = 0.0;
            for (int l = 0; l < k; ++l) {
                for (int r = 0; r < k; ++r) {
                    const double target = r == perm[static_cast<std::size_t>(l)] ? cm.pi(l) : 0.0;
                    total += std::abs(cm.u(r, l) - target);
                }
            }
            best = std::min(best, total);
        } while (std::next_permutation(perm.begin(), perm.end()));
        return best;
    }
    return 2.0 * (1.0 - max_assignment(cm.u));
}

void BlockModelSpec::validate() const {
    const int kk = k();
    if (kk < 1) throw ConfigError("block model: empty spec");
    if (p.rows() != kk || p.cols() != kk) throw DimensionError("block model: P must be K x K");
    for (int a = 0; a < kk; ++a)
        for (int b = 0; b < kk; ++b) {
            if (p(a, b) < 0.0 || p(a, b) > 1.0)
                throw ConfigError("block model: P entries must be in [0, 1]");
            if (p(a, b) != p(b, a)) throw ConfigError("block model: P must be symmetric");
        }
    double total = 0.0;
    for (int a = 0; a < kk; ++a) {
        if (!(pi(a) > 0.0)) throw ConfigError("block model: proportions must be positive");
        total += pi(a);
    }
    if (std::abs(total - 1.0) > 1e-9) throw ConfigError("block model: proportions must sum to 1");
    if (!(rho_n > 0.0) || rho_n > 1.0) throw ConfigError("block model: rho_n must be in (0, 1]");
}

double g_functional(const Eigen::MatrixXd& u, const Eigen::MatrixXd& p, double alpha) {
    if (u.rows() != p.rows() || u.cols() != p.cols() || p.rows() != p.cols())
        throw DimensionError("g functional: U and P must be square with equal sizes");
    const int k = static_cast<int>(u.rows());
    double total = 0.0;
    for (int row = 0; row < k; ++row) {
        const double mass = u.row(row).sum();
        if (mass <= 0.0) continue;
        double quad = 0.0;
        for (int l = 0; l < k; ++l)
            for (int lp = 0; lp < k; ++lp) quad += u(row, l) * u(row, lp) * p(l, lp);
        total += quad / std::pow(mass, alpha);
    }
    return total;
}

double g_functional(const ConfusionMatrix& cm, const Eigen::MatrixXd& p, double alpha) {
    return g_functional(cm.u, p, alpha);
}

PopulationEstimate population_criterion(const Partition& e, const Partition& c,
                                        const BetaSet& betas, const BlockModelSpec& spec,
                                        const PairSampler& sampler, double w, double alpha,
                                        int mc_samples, std::uint64_t seed) {
    check_same_n(e, c, "population criterion");
    spec.validate();
    if (mc_samples < 2) throw ConfigError("population criterion: mc_samples must be >= 2");
    const int kk = e.k;
    const int classes = spec.k();
    if (c.k > classes) throw DimensionError("population criterion: reference labels exceed spec K");
    if (static_cast<int>(betas.size()) != kk)
        throw DimensionError("population criterion: beta count != community count");

    // m[k][a] = number of nodes with estimated community k and true class a.
    std::vector<std::vector<double>> m(static_cast<std::size_t>(kk),
                                       std::vector<double>(static_cast<std::size_t>(classes), 0.0));
    for (int i = 0; i < e.n(); ++i)
        m[static_cast<std::size_t>(e.labels[static_cast<std::size_t>(i)])]
         [static_cast<std::size_t>(c.labels[static_cast<std::size_t>(i)])] += 1.0;
    const std::vector<int> sizes = e.sizes();

    PopulationEstimate est;
    double variance = 0.0;
    for (int k = 0; k < kk; ++k) {
        const int nk = sizes[static_cast<std::size_t>(k)];
        if (nk == 0) continue;
        const double scale = std::pow(nk, -alpha) * spec.rho_n;
        for (int a = 0; a < classes; ++a) {
            for (int b = a; b < classes; ++b) {
                // Ordered pair count for the (a, b) class combination,
                // diagonal included (population idealization).
                const double pairs = a == b
                                         ? m[static_cast<std::size_t>(k)][static_cast<std::size_t>(a)] *
                                               m[static_cast<std::size_t>(k)][static_cast<std::size_t>(b)]
                                         : 2.0 * m[static_cast<std::size_t>(k)][static_cast<std::size_t>(a)] *
                                               m[static_cast<std::size_t>(k)][static_cast<std::size_t>(b)];
                const double coef = scale * pairs * spec.p(a, b);
                if (coef == 0.0) continue;

                Rng rng(substream_key(seed, {kTagPopulation, static_cast<std::uint64_t>(a),
                                             static_cast<std::uint64_t>(b),
                                             static_cast<std::uint64_t>(k)}));
                double sum = 0.0, sumsq = 0.0;
                for (int s = 0; s < mc_samples; ++s) {
                    const Eigen::VectorXd phi = sampler(a, b, rng);
                    const double weight =
                        edge_weight(w, phi.dot(betas[static_cast<std::size_t>(k)]));
                    sum += weight;
                    sumsq += weight * weight;
                }
                const double mean = sum / mc_samples;
                const double var_w =
                    std::max(0.0, (sumsq - mc_samples * mean * mean) / (mc_samples - 1));
                est.value += coef * mean;
                variance += coef * coef * var_w / mc_samples;
            }
        }
    }
    est.se = std::sqrt(variance);
    return est;
}

ConditionReport check_conditions(const BlockModelSpec& spec, double m_phi, double m_beta,
                                 double w, double alpha, double pi0) {
    spec.validate();
    ConditionReport report;
    report.log_w = std::log(w);
    report.mphi_mbeta = m_phi * m_beta;
    report.weight_scale_ok = report.log_w > report.mphi_mbeta;

    report.min_pi = spec.pi.minCoeff();
    report.pi0 = pi0;
    report.proportions_ok = report.min_pi >= pi0;

    const int k = spec.k();
    report.worst_ratio = 0.0;
    report.assortative_ok = true;  // vacuous for K = 1
    for (int a = 0; a < k; ++a) {
        for (int b = a + 1; b < k; ++b) {
            const double denom = std::min(spec.p(a, a), spec.p(b, b));
            if (denom <= 0.0) {
                report.assortative_ok = false;
                report.worst_ratio = std::numeric_limits<double>::infinity();
                continue;
            }
            const double ratio = 2.0 * (k - 1) * spec.p(a, b) / denom;
            report.worst_ratio = std::max(report.worst_ratio, ratio);
            if (ratio >= 1.0) report.assortative_ok = false;
        }
    }
    report.alpha_lo = report.worst_ratio;
    report.alpha_ok = alpha >= report.alpha_lo && alpha <= 1.0;
    report.alpha_boundary = report.alpha_ok && (alpha == report.alpha_lo || alpha == 1.0);
    return report;
}

GSearchResult search_g_maximizer(const BlockModelSpec& spec, double alpha, int n_samples,
                                 std::uint64_t seed) {
    spec.validate();
    if (n_samples < 1) throw ConfigError("g search: n_samples must be >= 1");
    const int k = spec.k();

    GSearchResult result;
    result.diag_value = g_functional(Eigen::MatrixXd(spec.pi.asDiagonal()), spec.p, alpha);
    // The perfect-recovery diagonal is itself a candidate, so when no random
    // sample beats it the reported maximum sits exactly at the diagonal value.
    result.best_value = result.diag_value;

    Eigen::MatrixXd u(k, k);
    for (int s = 0; s < n_samples; ++s) {
        for (int col = 0; col < k; ++col) {
            // Dirichlet(1,...,1) split of the column mass pi_col.
            Rng rng(substream_key(seed, {kTagGSearch, static_cast<std::uint64_t>(s),
                                         static_cast<std::uint64_t>(col)}));
            double total = 0.0;
            for (int row = 0; row < k; ++row) {
                const double draw = -std::log(rng.uniform01());
                u(row, col) = draw;
                total += draw;
            }
            u.col(col) *= spec.pi(col) / total;
        }
        const double value = g_functional(u, spec.p, alpha);
        if (value > result.best_value) {
            result.best_value = value;
            result.best_sample = static_cast<std::uint64_t>(s);
        }
    }
    result.exceeded = result.best_value > result.diag_value + 1e-12;
    return result;
}

std::vector<double> criterion_deviation_medians(const std::vector<int>& ns, double within_prob,
                                                double out_in_ratio, double w, double alpha,
                                                int replicates, std::uint64_t seed) {
    if (replicates < 1) throw ConfigError("deviation trend: replicates must be >= 1");
    std::vector<double> medians;
    medians.reserve(ns.size());
    for (int n : ns) {
        if (n < 4 || n % 2 != 0) throw ConfigError("deviation trend: n must be even and >= 4");
        SbmConfig config;
        config.community_sizes = {n / 2, n / 2};
        config.within_prob = within_prob;
        config.out_in_ratio = out_in_ratio;

        // g at the diagonal confusion for the two-block spec.
        BlockModelSpec spec;
        spec.p.resize(2, 2);
        spec.p << within_prob, within_prob * out_in_ratio, within_prob * out_in_ratio, within_prob;
        spec.pi.resize(2);
        spec.pi << 0.5, 0.5;
        const double g_diag =
            g_functional(Eigen::MatrixXd(spec.pi.asDiagonal()), spec.p, alpha);

        std::vector<double> deviations;
        deviations.reserve(static_cast<std::size_t>(replicates));
        for (int rep = 0; rep < replicates; ++rep) {
            config.seed = substream_key(seed, {kTagTrend, static_cast<std::uint64_t>(n),
                                               static_cast<std::uint64_t>(rep)});
            auto [graph, truth] = generate_dcsbm(config);
            // At beta = 0 every edge weight is exactly w - 1.
            const double criterion = (w - 1.0) * marginal_criterion(graph, truth, alpha);
            const double normalized = criterion / (w * std::pow(n, 2.0 - alpha));
            deviations.push_back(std::abs(normalized - g_diag));
        }
        std::sort(deviations.begin(), deviations.end());
        const std::size_t mid = deviations.size() / 2;
        medians.push_back(deviations.size() % 2 == 1
                              ? deviations[mid]
                              : 0.5 * (deviations[mid - 1] + deviations[mid]));
    }
    return medians;
}

}  // namespace jcdc
