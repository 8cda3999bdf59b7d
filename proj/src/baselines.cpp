#include "jcdc/baselines.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

#include "jcdc/errors.hpp"
#include "jcdc/rng.hpp"

namespace jcdc {

namespace {

// One Lloyd run from given initial centroids. Returns labels and WCSS.
double lloyd(const Eigen::MatrixXd& rows, Eigen::MatrixXd& centroids, std::vector<int>& labels,
             int max_iters) {
    const int n = static_cast<int>(rows.rows());
    const int k = static_cast<int>(centroids.rows());
    labels.assign(static_cast<std::size_t>(n), 0);
    std::vector<int> counts(static_cast<std::size_t>(k), 0);

    for (int iter = 0; iter < max_iters; ++iter) {
        bool changed = iter == 0;
        for (int i = 0; i < n; ++i) {
            int best = 0;
            double best_d = (rows.row(i) - centroids.row(0)).squaredNorm();
            for (int c = 1; c < k; ++c) {
                const double d = (rows.row(i) - centroids.row(c)).squaredNorm();
                if (d < best_d) {
                    best_d = d;
                    best = c;
                }
            }
            if (labels[static_cast<std::size_t>(i)] != best) {
                labels[static_cast<std::size_t>(i)] = best;
                changed = true;
            }
        }
        if (!changed) break;

        centroids.setZero();
        std::fill(counts.begin(), counts.end(), 0);
        for (int i = 0; i < n; ++i) {
            centroids.row(labels[static_cast<std::size_t>(i)]) += rows.row(i);
            counts[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)])]++;
        }
        for (int c = 0; c < k; ++c) {
            if (counts[static_cast<std::size_t>(c)] > 0) {
                centroids.row(c) /= counts[static_cast<std::size_t>(c)];
                continue;
            }
            // Empty cluster: restart it at the point farthest from its
            // current assignment's centroid.
            int far_i = 0;
            double far_d = -1.0;
            for (int i = 0; i < n; ++i) {
                const double d =
                    (rows.row(i) - centroids.row(labels[static_cast<std::size_t>(i)])).squaredNorm();
                if (d > far_d) {
                    far_d = d;
                    far_i = i;
                }
            }
            centroids.row(c) = rows.row(far_i);
        }
    }

    double wcss = 0.0;
    for (int i = 0; i < n; ++i)
        wcss += (rows.row(i) - centroids.row(labels[static_cast<std::size_t>(i)])).squaredNorm();
    return wcss;
}

Eigen::MatrixXd sample_centroids(const Eigen::MatrixXd& rows, int k, Rng& rng) {
    const int n = static_cast<int>(rows.rows());
    Eigen::MatrixXd centroids(k, rows.cols());
    std::vector<int> chosen;
    int attempts = 0;
    while (static_cast<int>(chosen.size()) < k) {
        const int cand = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(n)));
        bool dup = false;
        for (int c : chosen)
            if (rows.row(c) == rows.row(cand)) dup = true;
        // Drop-and-resample duplicates; after too many attempts accept them
        // (fewer distinct rows than clusters) and let Lloyd prune.
        if (!dup || ++attempts > 20 * k) chosen.push_back(cand);
    }
    for (int c = 0; c < k; ++c) centroids.row(c) = rows.row(chosen[static_cast<std::size_t>(c)]);
    return centroids;
}

}  // namespace

KmeansResult kmeans(const Eigen::MatrixXd& rows, const KmeansConfig& config) {
    const int n = static_cast<int>(rows.rows());
    if (config.k < 1) throw ConfigError("kmeans: k must be >= 1");
    if (n < config.k) throw ConfigError("kmeans: more clusters than points");
    if (config.n_starts < 1) throw ConfigError("kmeans: n_starts must be >= 1");

    KmeansResult best;
    best.wcss = std::numeric_limits<double>::infinity();
    for (int start = 0; start < config.n_starts; ++start) {
        Rng rng(substream_key(config.seed, {0x6b6d, static_cast<std::uint64_t>(start)}));
        Eigen::MatrixXd centroids = sample_centroids(rows, config.k, rng);
        std::vector<int> labels;
        const double wcss = lloyd(rows, centroids, labels, config.max_iters);
        if (wcss < best.wcss) {
            best.wcss = wcss;
            best.centroids = centroids;
            best.partition = Partition(config.k, std::move(labels));
        }
    }
    best.partition.validate();
    return best;
}

Partition kmeans_partition(const FeatureTable& features, const KmeansConfig& config) {
    features.validate();
    for (FeatureKind kind : features.kinds)
        if (kind == FeatureKind::categorical)
            throw ConfigError("kmeans: expand categorical columns to indicators first");
    return kmeans(features.values, config).partition;
}

SpectralEmbedding spectral_embedding(const Graph& g, const SpectralConfig& config) {
    const int n = g.n();
    if (config.k < 1) throw ConfigError("spectral: k must be >= 1");
    if (n < config.k) throw ConfigError("spectral: more communities than nodes");
    if (config.tau < 0.0) throw ConfigError("spectral: tau must be >= 0");
    if (config.tau == 0.0) {
        for (int i = 0; i < n; ++i)
            if (g.degree(i) == 0.0)
                throw ComputeError("spectral: zero-degree node with tau=0 degenerates the Laplacian");
    }

    Eigen::VectorXd scale(n);
    for (int i = 0; i < n; ++i) scale(i) = 1.0 / std::sqrt(g.degree(i) + config.tau);
    SpectralEmbedding embedding;
    embedding.laplacian = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (const auto& [j, w] : g.neighbors(i))
            embedding.laplacian(i, j) = scale(i) * w * scale(j);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(embedding.laplacian);
    if (solver.info() != Eigen::Success) throw ComputeError("spectral: eigendecomposition failed");
    // Eigenvalues come out ascending; the K largest algebraic ones are last.
    embedding.vectors = solver.eigenvectors().rightCols(config.k);
    embedding.values = solver.eigenvalues().tail(config.k);
    return embedding;
}

Partition spectral_clustering(const Graph& g, const SpectralConfig& config) {
    const int n = g.n();
    Eigen::MatrixXd embed = spectral_embedding(g, config).vectors;

    if (config.row_normalize) {
        for (int i = 0; i < n; ++i) {
            const double norm = embed.row(i).norm();
            if (norm > 0.0) embed.row(i) /= norm;
        }
    }

    KmeansConfig km;
    km.k = config.k;
    km.n_starts = config.kmeans_starts;
    km.seed = substream_key(config.seed, {0x5370});
    return kmeans(embed, km).partition;
}

}  // namespace jcdc
