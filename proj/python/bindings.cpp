// Python bindings for the core operations: synthetic generators, the joint
// fit, the two baselines, and the comparison metrics.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

#include "jcdc/baselines.hpp"
#include "jcdc/criterion.hpp"
#include "jcdc/features.hpp"
#include "jcdc/graph.hpp"
#include "jcdc/metrics.hpp"
#include "jcdc/optimizer.hpp"
#include "jcdc/partition.hpp"

namespace py = pybind11;

namespace {

using EdgeTuple = std::tuple<int, int, double>;

jcdc::Graph make_graph(int n, const std::vector<EdgeTuple>& edges) {
    std::vector<jcdc::Graph::Edge> converted;
    converted.reserve(edges.size());
    for (const auto& [src, dst, weight] : edges) converted.push_back({src, dst, weight});
    return jcdc::Graph::from_edges(n, converted);
}

jcdc::FeatureTable make_table(const Eigen::MatrixXd& values,
                              const std::vector<std::string>& kinds) {
    jcdc::FeatureTable table;
    table.values = values;
    if (kinds.empty()) {
        table.kinds.assign(static_cast<std::size_t>(values.cols()), jcdc::FeatureKind::continuous);
    } else {
        for (const std::string& k : kinds) table.kinds.push_back(jcdc::parse_feature_kind(k));
    }
    for (int j = 0; j < values.cols(); ++j) table.names.push_back("x" + std::to_string(j));
    table.validate();
    return table;
}

jcdc::SimilaritySet make_similarities(const Eigen::MatrixXd& values,
                                      const std::vector<std::string>& kinds) {
    return jcdc::build_similarities(jcdc::expand_categoricals(make_table(values, kinds)));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "community detection on graphs with node features";

    m.def(
        "generate_sbm",
        [](const std::vector<int>& community_sizes, double within_prob, double out_in_ratio,
           double hub_fraction, double hub_theta, std::uint64_t seed) {
            jcdc::SbmConfig config;
            config.community_sizes = community_sizes;
            config.within_prob = within_prob;
            config.out_in_ratio = out_in_ratio;
            config.hub_fraction = hub_fraction;
            config.hub_theta = hub_theta;
            config.seed = seed;
            auto [graph, truth] = jcdc::generate_dcsbm(config);
            std::vector<EdgeTuple> edges;
            for (int i = 0; i < graph.n(); ++i)
                for (const auto& [j, w] : graph.neighbors(i))
                    if (j > i) edges.emplace_back(i, j, w);
            return py::make_tuple(graph.n(), edges, truth.labels);
        },
        py::arg("community_sizes"), py::arg("within_prob") = 0.1, py::arg("out_in_ratio") = 0.25,
        py::arg("hub_fraction") = 0.0, py::arg("hub_theta") = 1.0, py::arg("seed") = 0,
        "Sample a degree-corrected block-model graph; returns (n, edges, labels).");

    m.def(
        "generate_features",
        [](const std::vector<int>& labels, int k, double mu, int n_noise, std::uint64_t seed) {
            jcdc::FeatureGenConfig config;
            config.mu = mu;
            config.n_noise = n_noise;
            config.seed = seed;
            return jcdc::generate_features(jcdc::Partition(k, labels), config).values;
        },
        py::arg("labels"), py::arg("k"), py::arg("mu") = 1.0, py::arg("n_noise") = 1,
        py::arg("seed") = 0,
        "Sample node features: one community-shifted column plus noise columns.");

    m.def(
        "fit",
        [](int n, const std::vector<EdgeTuple>& edges, const Eigen::MatrixXd& features,
           const std::vector<std::string>& kinds, int k, double alpha, double w, double lambda,
           double m_beta, std::uint64_t seed, int restarts, int min_size, int threads) {
            const jcdc::Graph graph = make_graph(n, edges);
            const jcdc::FeatureTable table =
                jcdc::expand_categoricals(make_table(features, kinds));
            const jcdc::SimilaritySet sims = jcdc::build_similarities(table);
            jcdc::FitConfig config;
            config.k = k;
            config.alpha = alpha;
            config.w = w;
            config.min_community_size = min_size;
            config.seed = seed;
            config.threads = threads;
            config.tabu.restarts = restarts;
            config.ascent.lambda = lambda;
            config.ascent.m_beta = m_beta;
            const jcdc::FitResult result = jcdc::fit(graph, table, config);
            py::dict out;
            out["labels"] = result.partition.labels;
            std::vector<std::vector<double>> betas;
            for (const auto& b : result.betas)
                betas.emplace_back(b.data(), b.data() + b.size());
            out["betas"] = betas;
            out["objective"] = result.objective;
            out["criterion"] =
                jcdc::jcdc_criterion(graph, sims, result.partition, result.betas, alpha, w);
            out["trace"] = result.trace;
            out["converged"] = result.converged;
            out["iterations"] = result.iterations;
            return out;
        },
        py::arg("n"), py::arg("edges"), py::arg("features"),
        py::arg("kinds") = std::vector<std::string>{}, py::arg("k") = 2, py::arg("alpha") = 1.0,
        py::arg("w") = 5.0, py::arg("lambda") = 1e-5, py::arg("m_beta") = 5.0, py::arg("seed") = 0,
        py::arg("restarts") = 5, py::arg("min_size") = 1, py::arg("threads") = 1,
        "Joint label search and coefficient ascent; returns a result dict.");

    m.def(
        "criterion",
        [](int n, const std::vector<EdgeTuple>& edges, const Eigen::MatrixXd& features,
           const std::vector<std::string>& kinds, const std::vector<int>& labels, int k,
           const std::vector<std::vector<double>>& betas, double alpha, double w) {
            const jcdc::Graph graph = make_graph(n, edges);
            const jcdc::SimilaritySet sims = make_similarities(features, kinds);
            jcdc::BetaSet converted;
            for (const auto& b : betas)
                converted.push_back(Eigen::Map<const Eigen::VectorXd>(
                    b.data(), static_cast<Eigen::Index>(b.size())));
            return jcdc::jcdc_criterion(graph, sims, jcdc::Partition(k, labels), converted, alpha,
                                        w);
        },
        py::arg("n"), py::arg("edges"), py::arg("features"), py::arg("kinds"), py::arg("labels"),
        py::arg("k"), py::arg("betas"), py::arg("alpha") = 1.0, py::arg("w") = 5.0,
        "Evaluate the community criterion for a fixed labeling and coefficients.");

    m.def(
        "spectral_clustering",
        [](int n, const std::vector<EdgeTuple>& edges, int k, double tau, std::uint64_t seed) {
            jcdc::SpectralConfig config;
            config.k = k;
            config.tau = tau;
            config.seed = seed;
            return jcdc::spectral_clustering(make_graph(n, edges), config).labels;
        },
        py::arg("n"), py::arg("edges"), py::arg("k") = 2, py::arg("tau") = 1e-7, py::arg("seed") = 0,
        "Regularized spectral clustering on the adjacency matrix.");

    m.def(
        "kmeans",
        [](const Eigen::MatrixXd& rows, int k, int n_starts, std::uint64_t seed) {
            jcdc::KmeansConfig config;
            config.k = k;
            config.n_starts = n_starts;
            config.seed = seed;
            return jcdc::kmeans(rows, config).partition.labels;
        },
        py::arg("rows"), py::arg("k") = 2, py::arg("n_starts") = 10, py::arg("seed") = 0,
        "Lloyd k-means over row vectors; returns labels from the best start.");

    m.def(
        "nmi",
        [](const std::vector<int>& a, const std::vector<int>& b) {
            const int ka = *std::max_element(a.begin(), a.end()) + 1;
            const int kb = *std::max_element(b.begin(), b.end()) + 1;
            return jcdc::nmi(jcdc::Partition(ka, a), jcdc::Partition(kb, b));
        },
        py::arg("a"), py::arg("b"), "Normalized mutual information between two labelings.");

    m.def(
        "misclassification_distance",
        [](const std::vector<int>& a, const std::vector<int>& b, int k) {
            return jcdc::misclassification_distance(jcdc::Partition(k, a), jcdc::Partition(k, b));
        },
        py::arg("a"), py::arg("b"), py::arg("k"),
        "Fraction mislabeled under the best community relabeling.");
}
