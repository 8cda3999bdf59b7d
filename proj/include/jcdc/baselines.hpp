#pragma once
// Single-source baselines: spectral clustering on the regularized Laplacian
// (network only) and k-means on raw feature rows (features only).

#include <Eigen/Dense>
#include <cstdint>

#include "jcdc/features.hpp"
#include "jcdc/graph.hpp"
#include "jcdc/partition.hpp"

namespace jcdc {

struct SpectralConfig {
    int k = 2;
    double tau = 1e-7;  // degree regularizer added before the symmetric scaling
    std::uint64_t seed = 0;
    bool row_normalize = false;  // normalize embedding rows before k-means
    int kmeans_starts = 10;
};

struct SpectralEmbedding {
    Eigen::MatrixXd laplacian;  // D_tau^{-1/2} A D_tau^{-1/2}
    Eigen::MatrixXd vectors;    // n x k, eigenvectors of the k largest algebraic eigenvalues
    Eigen::VectorXd values;     // the matching eigenvalues, ascending
};

// Forms D_tau^{-1/2} A D_tau^{-1/2} with D_tau = diag(degrees) + tau*I and
// takes the K eigenvectors of largest algebraic eigenvalue.
SpectralEmbedding spectral_embedding(const Graph& g, const SpectralConfig& config);

// Clusters the spectral embedding rows with k-means.
Partition spectral_clustering(const Graph& g, const SpectralConfig& config);

struct KmeansConfig {
    int k = 2;
    int n_starts = 10;
    int max_iters = 100;
    std::uint64_t seed = 0;
};

struct KmeansResult {
    Partition partition;
    Eigen::MatrixXd centroids;  // k x p
    double wcss = 0.0;          // within-cluster sum of squares of the best start
};

// Lloyd's algorithm on raw rows, best of n_starts by within-cluster sum of
// squares. Initial centroids are sampled without replacement per start; a
// centroid left with no points is re-seeded at the point farthest from its
// own centroid, and duplicate initial centroids are dropped and resampled.
KmeansResult kmeans(const Eigen::MatrixXd& rows, const KmeansConfig& config);

// Feature-table convenience wrapper (categorical columns must be expanded
// to indicators first).
Partition kmeans_partition(const FeatureTable& features, const KmeansConfig& config);

}  // namespace jcdc
