#include "jcdc/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "jcdc/errors.hpp"
#include "jcdc/rng.hpp"

namespace jcdc {

Graph Graph::from_edges(int n, const std::vector<Edge>& edges) {
    if (n < 0) throw ConfigError("graph: negative node count");
    Graph g;
    g.n_ = n;
    g.rows_.assign(static_cast<std::size_t>(n), {});
    g.degrees_.assign(static_cast<std::size_t>(n), 0.0);
    for (const Edge& e : edges) {
        if (e.src < 0 || e.src >= n || e.dst < 0 || e.dst >= n)
            throw ConfigError("graph: edge endpoint out of range");
        if (e.src == e.dst) throw ConfigError("graph: self-loop not allowed");
        if (!(e.weight >= 0.0) || !std::isfinite(e.weight))
            throw ConfigError("graph: edge weight must be finite and >= 0");
        if (e.weight == 0.0) continue;
        g.rows_[static_cast<std::size_t>(e.src)].emplace_back(e.dst, e.weight);
        g.rows_[static_cast<std::size_t>(e.dst)].emplace_back(e.src, e.weight);
    }
    for (int i = 0; i < n; ++i) {
        auto& row = g.rows_[static_cast<std::size_t>(i)];
        std::sort(row.begin(), row.end());
        for (std::size_t s = 1; s < row.size(); ++s) {
            if (row[s].first == row[s - 1].first)
                throw ConfigError("graph: duplicate edge (" + std::to_string(i) + "," +
                                  std::to_string(row[s].first) + ")");
        }
        for (const auto& [j, w] : row) {
            g.degrees_[static_cast<std::size_t>(i)] += w;
            if (j > i) {
                g.m_++;
                g.total_weight_ += w;
            }
        }
    }
    return g;
}

Graph Graph::from_dense(const Eigen::MatrixXd& a) {
    if (a.rows() != a.cols()) throw ConfigError("graph: adjacency must be square");
    const int n = static_cast<int>(a.rows());
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) {
        if (a(i, i) != 0.0) throw ConfigError("graph: nonzero diagonal");
        for (int j = i + 1; j < n; ++j) {
            if (a(i, j) != a(j, i)) throw ConfigError("graph: adjacency not symmetric");
            if (a(i, j) != 0.0) edges.push_back({i, j, a(i, j)});
        }
    }
    return from_edges(n, edges);
}

double Graph::weight(int i, int j) const {
    const auto& row = rows_[static_cast<std::size_t>(i)];
    auto it = std::lower_bound(row.begin(), row.end(), std::make_pair(j, 0.0));
    if (it != row.end() && it->first == j) return it->second;
    return 0.0;
}

Eigen::MatrixXd Graph::dense() const {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_, n_);
    for (int i = 0; i < n_; ++i)
        for (const auto& [j, w] : rows_[static_cast<std::size_t>(i)]) a(i, j) = w;
    return a;
}

Graph Graph::permuted(const std::vector<int>& perm) const {
    if (static_cast<int>(perm.size()) != n_) throw ConfigError("graph: bad permutation size");
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(m_));
    for (int i = 0; i < n_; ++i)
        for (const auto& [j, w] : rows_[static_cast<std::size_t>(i)])
            if (j > i) edges.push_back({perm[static_cast<std::size_t>(i)],
                                        perm[static_cast<std::size_t>(j)], w});
    return from_edges(n_, edges);
}

int SbmConfig::n() const {
    int total = 0;
    for (int s : community_sizes) total += s;
    return total;
}

void SbmConfig::validate() const {
    if (community_sizes.empty()) throw ConfigError("sbm: community_sizes must be nonempty");
    for (int s : community_sizes)
        if (s < 1) throw ConfigError("sbm: every community size must be >= 1");
    if (!(within_prob >= 0.0) || within_prob > 1.0)
        throw ConfigError("sbm: within_prob must be in [0, 1]");
    if (!(out_in_ratio >= 0.0) || out_in_ratio > 1.0)
        throw ConfigError("sbm: out_in_ratio must be in [0, 1]");
    if (!(density_scale > 0.0) || density_scale > 1.0)
        throw ConfigError("sbm: density_scale must be in (0, 1]");
    if (hub_fraction < 0.0 || hub_fraction >= 1.0)
        throw ConfigError("sbm: hub_fraction must be in [0, 1)");
    if (hub_theta < 1.0) throw ConfigError("sbm: hub_theta must be >= 1");
    if (!(base_theta > 0.0)) throw ConfigError("sbm: base_theta must be > 0");
    if (!(prob_cap > 0.0) || prob_cap > 1.0) throw ConfigError("sbm: prob_cap must be in (0, 1]");
}

std::vector<double> SbmConfig::thetas() const {
    std::vector<double> theta;
    theta.reserve(static_cast<std::size_t>(n()));
    for (int size : community_sizes) {
        const int hubs = static_cast<int>(std::ceil(hub_fraction * size));
        for (int j = 0; j < size; ++j) theta.push_back(j < hubs ? hub_theta : base_theta);
    }
    return theta;
}

Partition SbmConfig::true_partition() const {
    std::vector<int> labels;
    labels.reserve(static_cast<std::size_t>(n()));
    for (int c = 0; c < k(); ++c)
        labels.insert(labels.end(), static_cast<std::size_t>(community_sizes[static_cast<std::size_t>(c)]), c);
    return Partition(k(), std::move(labels));
}

double SbmConfig::edge_prob(int i, int j, const std::vector<double>& theta,
                            const std::vector<int>& labels) const {
    const double base = theta[static_cast<std::size_t>(i)] * theta[static_cast<std::size_t>(j)] *
                        density_scale *
                        block_prob(labels[static_cast<std::size_t>(i)], labels[static_cast<std::size_t>(j)]);
    // The cap applies to the final probability, whichever block the pair is in.
    return std::min(prob_cap, base);
}

std::pair<Graph, Partition> generate_dcsbm(const SbmConfig& config) {
    config.validate();
    const int n = config.n();
    const std::vector<double> theta = config.thetas();
    Partition truth = config.true_partition();

    std::vector<Graph::Edge> edges;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double p = config.edge_prob(i, j, theta, truth.labels);
            if (p <= 0.0) continue;
            const double u = keyed_uniform01(substream_key(
                config.seed, {static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j)}));
            if (u < p) edges.push_back({i, j, 1.0});
        }
    }
    return {Graph::from_edges(n, edges), std::move(truth)};
}

std::vector<double> expected_degree(const SbmConfig& config) {
    config.validate();
    const int n = config.n();
    const std::vector<double> theta = config.thetas();
    const Partition truth = config.true_partition();
    std::vector<double> deg(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (j != i) deg[static_cast<std::size_t>(i)] += config.edge_prob(i, j, theta, truth.labels);
    return deg;
}

Graph read_edge_list(const std::string& path, int force_n) {
    std::ifstream in(path);
    if (!in) throw ParseError(path, 0, "cannot open file");
    std::vector<Graph::Edge> edges;
    std::string line;
    long lineno = 0;
    int max_id = -1;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ss(line);
        long long src, dst;
        double w = 1.0;
        if (!(ss >> src >> dst)) throw ParseError(path, lineno, "expected 'src dst [weight]'");
        if (!(ss >> w)) w = 1.0;
        std::string trailing;
        if (ss >> trailing) throw ParseError(path, lineno, "trailing tokens after weight");
        if (src < 0 || dst < 0) throw ParseError(path, lineno, "negative node id");
        if (src == dst) throw ParseError(path, lineno, "self-loop not allowed");
        if (!std::isfinite(w) || w < 0.0) throw ParseError(path, lineno, "bad edge weight");
        max_id = std::max(max_id, static_cast<int>(std::max(src, dst)));
        edges.push_back({static_cast<int>(src), static_cast<int>(dst), w});
    }
    int n = max_id + 1;
    if (force_n >= 0) {
        if (force_n < n) throw DimensionError(path + ": node id exceeds forced node count");
        n = force_n;
    }
    try {
        return Graph::from_edges(n, edges);
    } catch (const ConfigError& e) {
        throw ParseError(path, 0, e.what());
    }
}

void write_edge_list(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ComputeError("cannot write " + path);
    out << "# n=" << g.n() << "\n";
    for (int i = 0; i < g.n(); ++i)
        for (const auto& [j, w] : g.neighbors(i))
            if (j > i) {
                out << i << '\t' << j;
                if (w != 1.0) out << '\t' << w;
                out << '\n';
            }
    if (!out) throw ComputeError("write failed for " + path);
}

}  // namespace jcdc
