#pragma once
// Node covariates and the pairwise similarity transform feeding the criterion.
//
// Raw features are an n x p column table. Each column has a declared kind:
//   continuous / ordinal -> pair similarity is -|x_i - x_j|
//   categorical          -> pair similarity is 1 if equal, else 0
// Each similarity dimension is then standardized over all n(n-1)/2 unordered
// pairs (population sd). A constant column standardizes to all zeros and sets
// a warning flag instead of dividing by zero.

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

namespace jcdc {

struct Partition;

enum class FeatureKind { continuous, categorical, ordinal };

FeatureKind parse_feature_kind(const std::string& s);
std::string feature_kind_name(FeatureKind k);

// Raw per-node feature table. Categorical columns store level codes as doubles.
struct FeatureTable {
    Eigen::MatrixXd values;  // n x p
    std::vector<FeatureKind> kinds;
    std::vector<std::string> names;

    int n() const { return static_cast<int>(values.rows()); }
    int p() const { return static_cast<int>(values.cols()); }
    void validate() const;
};

// Synthetic covariates aligned with a known partition: one signal column
// (community 0 shifted by +mu, everyone else by -mu) plus pure-noise columns.
struct FeatureGenConfig {
    double mu = 1.0;
    int n_noise = 1;
    std::uint64_t seed = 0;
};

FeatureTable generate_features(const Partition& truth, const FeatureGenConfig& config);

// Replace each categorical column with (levels - 1) indicator columns, named
// "<col>=<level>"; the first level observed in sorted order is the baseline.
FeatureTable expand_categoricals(const FeatureTable& table);

// Precomputed standardized pairwise similarities. Immutable once built.
class SimilaritySet {
  public:
    SimilaritySet() = default;

    int n() const { return n_; }
    int dim() const { return dim_; }

    // Standardized similarity vector for the unordered pair {i, j}, i != j.
    Eigen::VectorXd phi(int i, int j) const;

    // <phi(i,j), beta> without materializing the vector. Hot path.
    double phi_dot(int i, int j, const Eigen::VectorXd& beta) const;

    // Largest pair-vector 2-norm over all unordered pairs.
    double max_norm() const { return max_norm_; }

    // Per-dimension standardization stats and constant-column flags.
    const std::vector<double>& means() const { return means_; }
    const std::vector<double>& sds() const { return sds_; }
    const std::vector<bool>& constant_dims() const { return constant_; }
    bool any_constant() const;
    const std::vector<std::string>& names() const { return names_; }

    friend SimilaritySet build_similarities(const FeatureTable&);

  private:
    std::size_t pair_index(int i, int j) const;

    int n_ = 0;
    int dim_ = 0;
    double max_norm_ = 0.0;
    std::vector<double> data_;  // row-major: pair index * dim_ + d
    std::vector<double> means_;
    std::vector<double> sds_;
    std::vector<bool> constant_;
    std::vector<std::string> names_;
};

SimilaritySet build_similarities(const FeatureTable& table);

// CSV with a header row "node_id,name[:kind],...". The first column holds
// 0-based node ids (any row order, each id exactly once); remaining columns
// are plain decimal feature values. Kinds omitted from the header default to
// continuous; the CLI's --kinds flag overrides them.
FeatureTable read_feature_csv(const std::string& path);
void write_feature_csv(const FeatureTable& table, const std::string& path);

}  // namespace jcdc
