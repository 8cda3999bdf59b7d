#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "jcdc/partition.hpp"

namespace jcdc {

// Undirected weighted graph, no self-loops, all weights >= 0 and finite.
// Stored as symmetric sorted neighbor lists (row storage); a dense mirror
// is materialized on demand for the spectral path. Immutable once built.
class Graph {
public:
    struct Edge {
        int src;
        int dst;
        double weight;
    };

    Graph() = default;

    // Edges are (i, j, w) with i != j, listed once per unordered pair.
    static Graph from_edges(int n, const std::vector<Edge>& edges);

    // Accepts any symmetric nonnegative matrix with zero diagonal.
    static Graph from_dense(const Eigen::MatrixXd& a);

    int n() const { return n_; }
    std::int64_t num_edges() const { return m_; }        // unordered pairs with w > 0
    double total_weight() const { return total_weight_; }  // sum over unordered pairs

    std::span<const std::pair<int, double>> neighbors(int i) const {
        return {rows_[static_cast<std::size_t>(i)].data(), rows_[static_cast<std::size_t>(i)].size()};
    }

    double weight(int i, int j) const;  // 0 when no edge
    double degree(int i) const { return degrees_[static_cast<std::size_t>(i)]; }

    Eigen::MatrixXd dense() const;

    // Applies a node relabeling: node i becomes perm[i].
    Graph permuted(const std::vector<int>& perm) const;

private:
    int n_ = 0;
    std::int64_t m_ = 0;
    double total_weight_ = 0.0;
    std::vector<std::vector<std::pair<int, double>>> rows_;
    std::vector<double> degrees_;
};

// Degree-corrected planted-partition generator. Within-community pairs
// connect with probability min(prob_cap, theta_i*theta_j*density_scale*within_prob),
// between-community pairs with the same expression times out_in_ratio.
// The first ceil(hub_fraction*size) nodes of each community get
// theta = hub_theta, the rest base_theta.
struct SbmConfig {
    std::vector<int> community_sizes;
    double within_prob = 0.1;     // p
    double out_in_ratio = 0.25;   // r
    double density_scale = 1.0;   // rho_n
    double hub_fraction = 0.0;
    double hub_theta = 1.0;
    double base_theta = 1.0;
    double prob_cap = 0.99;
    std::uint64_t seed = 0;

    int n() const;
    int k() const { return static_cast<int>(community_sizes.size()); }
    void validate() const;

    // Per-node degree parameters and true labels implied by the config.
    std::vector<double> thetas() const;
    Partition true_partition() const;

    // Block probability before degree correction: within_prob on the
    // diagonal, out_in_ratio*within_prob off it.
    double block_prob(int a, int b) const {
        return a == b ? within_prob : out_in_ratio * within_prob;
    }

    // Final edge probability for a node pair.
    double edge_prob(int i, int j, const std::vector<double>& theta,
                     const std::vector<int>& labels) const;
};

// Draws a simple binary graph from the model. Each pair (i, j), i < j,
// uses the substream keyed by (seed, i, j), so results do not depend on
// traversal or thread schedule.
std::pair<Graph, Partition> generate_dcsbm(const SbmConfig& config);

// Expected degree sum_{j != i} edge_prob(i, j) for every node.
std::vector<double> expected_degree(const SbmConfig& config);

// Edge-list text format: one undirected edge per line,
// "src<TAB>dst[<TAB>weight]", 0-based ids, '#' comments. A missing weight
// means 1.0. Node count is max id + 1 unless a larger n is forced.
Graph read_edge_list(const std::string& path, int force_n = -1);
void write_edge_list(const Graph& g, const std::string& path);

}  // namespace jcdc
