// Agreement metrics, the confusion functional, the population criterion, and
// the block-model condition checks.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "jcdc/criterion.hpp"
#include "jcdc/errors.hpp"
#include "jcdc/metrics.hpp"
#include "jcdc/partition.hpp"
#include "jcdc/rng.hpp"

using namespace jcdc;

namespace {

Partition random_partition(int n, int k, Rng& rng) {
    std::vector<int> labels(static_cast<std::size_t>(n));
    for (int& l : labels) l = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(k)));
    return Partition(k, labels);
}

BlockModelSpec two_block_spec(double within, double ratio, double pi0, double pi1) {
    BlockModelSpec spec;
    spec.p.resize(2, 2);
    spec.p << within, within * ratio, within * ratio, within;
    spec.pi.resize(2);
    spec.pi << pi0, pi1;
    return spec;
}

}  // namespace

TEST_CASE("nmi rewards exact and relabeled agreement") {
    Rng rng(11);
    const Partition a = random_partition(40, 3, rng);
    CHECK(nmi(a, a) == 1.0);

    std::vector<int> swapped = a.labels;
    for (int& l : swapped) l = (l + 1) % 3;
    CHECK(nmi(a, Partition(3, swapped)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("nmi of a constant partition against structure is zero") {
    std::vector<int> labels(10);
    for (int i = 0; i < 10; ++i) labels[static_cast<std::size_t>(i)] = i % 2;
    const Partition balanced(2, labels);
    CHECK(nmi(Partition::constant(10), balanced) == 0.0);
    CHECK(nmi(balanced, Partition::constant(10)) == 0.0);
    // Two degenerate partitions count as perfect agreement.
    CHECK(nmi(Partition::constant(10), Partition::constant(10, 3, 0)) == 1.0);
}

TEST_CASE("nmi is symmetric and bounded") {
    Rng rng(12);
    for (int rep = 0; rep < 50; ++rep) {
        const Partition a = random_partition(25, 2 + rep % 3, rng);
        const Partition b = random_partition(25, 2 + (rep + 1) % 3, rng);
        const double ab = nmi(a, b);
        // Swapping the arguments transposes the confusion matrix; summation
        // order differs, so allow rounding at the last digit.
        CHECK(ab == doctest::Approx(nmi(b, a)).epsilon(1e-14));
        CHECK(ab >= 0.0);
        CHECK(ab <= 1.0);
    }
}

TEST_CASE("misclassification distance counts flipped nodes") {
    std::vector<int> labels(10);
    for (int i = 0; i < 10; ++i) labels[static_cast<std::size_t>(i)] = i < 5 ? 0 : 1;
    const Partition truth(2, labels);
    CHECK(misclassification_distance(truth, truth) == 0.0);

    std::vector<int> flipped = labels;
    flipped[0] = 1;
    CHECK(misclassification_distance(Partition(2, flipped), truth) == 0.1);

    // Relabeling costs nothing.
    std::vector<int> swapped = labels;
    for (int& l : swapped) l = 1 - l;
    CHECK(misclassification_distance(Partition(2, swapped), truth) == 0.0);
}

TEST_CASE("misclassification distance matches brute force over relabelings") {
    Rng rng(13);
    for (int rep = 0; rep < 30; ++rep) {
        const Partition e = random_partition(12, 3, rng);
        const Partition c = random_partition(12, 3, rng);

        std::vector<int> perm = {0, 1, 2};
        double best = 1.0;
        do {
            int disagree = 0;
            for (int i = 0; i < 12; ++i)
                if (perm[static_cast<std::size_t>(e.labels[static_cast<std::size_t>(i)])] !=
                    c.labels[static_cast<std::size_t>(i)])
                    ++disagree;
            best = std::min(best, disagree / 12.0);
        } while (std::next_permutation(perm.begin(), perm.end()));

        CHECK(misclassification_distance(e, c) == doctest::Approx(best).epsilon(1e-15));
    }
}

TEST_CASE("misclassification distance scales to many communities") {
    // 9 communities of 100 nodes; the estimate applies a 9-cycle relabeling
    // and then corrupts 3 nodes per community, so the optimal alignment is
    // the cycle and exactly 27 nodes disagree.
    const int k = 9, per = 100, n = k * per;
    std::vector<int> truth_labels(static_cast<std::size_t>(n));
    std::vector<int> est_labels(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const int c = i / per;
        truth_labels[static_cast<std::size_t>(i)] = c;
        est_labels[static_cast<std::size_t>(i)] = (c + 1) % k;
    }
    for (int c = 0; c < k; ++c)
        for (int j = 0; j < 3; ++j)
            est_labels[static_cast<std::size_t>(c * per + j)] = (c + 5) % k;
    const Partition truth(k, truth_labels);
    const Partition est(k, est_labels);
    CHECK(misclassification_distance(est, truth) == 27.0 / 900.0);
}

TEST_CASE("confusion matrix carries unit mass with reference column sums") {
    Rng rng(14);
    const Partition e = random_partition(30, 3, rng);
    const Partition c = random_partition(30, 4, rng);
    const ConfusionMatrix cm = confusion_matrix(e, c);
    REQUIRE(cm.u.rows() == cm.u.cols());
    CHECK(cm.u.sum() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(cm.u.minCoeff() >= 0.0);

    const std::vector<int> counts = c.sizes();
    for (int l = 0; l < c.k; ++l) {
        CHECK(cm.u.col(l).sum() == doctest::Approx(counts[static_cast<std::size_t>(l)] / 30.0)
                                       .epsilon(1e-12));
        CHECK(cm.pi(l) == doctest::Approx(counts[static_cast<std::size_t>(l)] / 30.0)
                              .epsilon(1e-12));
    }
}

TEST_CASE("permutation-minimal l1 distance is twice the misclassification distance") {
    Rng rng(15);
    for (int rep = 0; rep < 100; ++rep) {
        const int k = 2 + static_cast<int>(rng.uniform_below(7));  // up to 8
        const Partition e = random_partition(30, k, rng);
        const Partition c = random_partition(30, k, rng);
        const double d = misclassification_distance(e, c);
        CHECK(min_permutation_l1(confusion_matrix(e, c)) ==
              doctest::Approx(2.0 * d).epsilon(1e-12));
    }
}

TEST_CASE("confusion functional at the diagonal sums scaled block densities") {
    // Proportions (2/3, 1/3): at alpha = 1 the diagonal value collapses to
    // the common within-community density.
    const BlockModelSpec spec = two_block_spec(0.1, 0.25, 2.0 / 3.0, 1.0 / 3.0);
    const Eigen::MatrixXd diag = spec.pi.asDiagonal();
    CHECK(g_functional(diag, spec.p, 1.0) == doctest::Approx(0.1).epsilon(1e-15));

    // General alpha: sum of pi^(2 - alpha) * P_ll.
    const double alpha = 0.7;
    const double expected = std::pow(2.0 / 3.0, 2.0 - alpha) * 0.1 +
                            std::pow(1.0 / 3.0, 2.0 - alpha) * 0.1;
    CHECK(g_functional(diag, spec.p, alpha) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("confusion functional matches its definition on random matrices") {
    Rng rng(16);
    Eigen::MatrixXd p(3, 3);
    p << 0.2, 0.03, 0.05, 0.03, 0.15, 0.02, 0.05, 0.02, 0.25;
    for (int rep = 0; rep < 20; ++rep) {
        Eigen::MatrixXd u(3, 3);
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) u(a, b) = rng.uniform01();
        u /= u.sum();
        const double alpha = 0.5 + 0.5 * rng.uniform01();

        double manual = 0.0;
        for (int k = 0; k < 3; ++k) {
            double inner = 0.0;
            for (int l = 0; l < 3; ++l)
                for (int lp = 0; lp < 3; ++lp) inner += u(k, l) * u(k, lp) * p(l, lp);
            manual += inner / std::pow(u.row(k).sum(), alpha);
        }
        CHECK(g_functional(u, p, alpha) == doctest::Approx(manual).epsilon(1e-12));
    }
}

TEST_CASE("confusion functional skips empty rows and ignores row permutations") {
    Eigen::MatrixXd p(2, 2);
    p << 0.1, 0.02, 0.02, 0.1;
    Eigen::MatrixXd u(2, 2);
    u << 0.6, 0.4, 0.0, 0.0;
    const double lone = (0.6 * 0.6 * 0.1 + 2 * 0.6 * 0.4 * 0.02 + 0.4 * 0.4 * 0.1) /
                        std::pow(1.0, 0.8);
    CHECK(g_functional(u, p, 0.8) == doctest::Approx(lone).epsilon(1e-14));

    Eigen::VectorXd pi(2);
    pi << 0.7, 0.3;
    const Eigen::MatrixXd diag = pi.asDiagonal();
    Eigen::MatrixXd permuted(2, 2);
    permuted << 0.0, 0.3, 0.7, 0.0;  // rows swapped: a relabeled perfect recovery
    CHECK(g_functional(permuted, p, 0.8) == doctest::Approx(g_functional(diag, p, 0.8))
                                                .epsilon(1e-14));
}

TEST_CASE("population criterion with zero coefficients has a closed form") {
    const BlockModelSpec spec = two_block_spec(0.1, 0.25, 0.5, 0.5);
    const int n = 40;
    std::vector<int> truth_labels(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) truth_labels[static_cast<std::size_t>(i)] = i < n / 2 ? 0 : 1;
    const Partition truth(2, truth_labels);

    // Imperfect estimate: move 4 nodes across.
    std::vector<int> est_labels = truth_labels;
    for (int i = 0; i < 4; ++i) est_labels[static_cast<std::size_t>(i)] = 1;
    const Partition est(2, est_labels);

    const PairSampler sampler = [](int, int, Rng& rng) {
        Eigen::VectorXd phi(1);
        phi << 2.0 * rng.uniform01() - 1.0;
        return phi;
    };
    const double w = 5.0, alpha = 1.0;
    const PopulationEstimate got =
        population_criterion(est, truth, zero_betas(2, 1), spec, sampler, w, alpha, 10, 7);

    // With beta = 0 every pair weight is exactly w - 1.
    double expected = 0.0;
    const std::vector<int> sizes = est.sizes();
    for (int k = 0; k < 2; ++k) {
        Eigen::Vector2d m = Eigen::Vector2d::Zero();
        for (int i = 0; i < n; ++i)
            if (est.labels[static_cast<std::size_t>(i)] == k)
                m(truth.labels[static_cast<std::size_t>(i)]) += 1.0;
        expected += std::pow(sizes[static_cast<std::size_t>(k)], -alpha) *
                    (m.transpose() * spec.p * m)(0) * (w - 1.0);
    }
    CHECK(got.value == doctest::Approx(expected).epsilon(1e-12));
    CHECK(got.se == 0.0);
}

TEST_CASE("normalized population criterion is invariant to the node count") {
    const BlockModelSpec spec = two_block_spec(0.12, 0.3, 0.5, 0.5);
    Rng rng(17);
    BetaSet betas(2, Eigen::VectorXd::Zero(2));
    for (auto& b : betas)
        for (int d = 0; d < 2; ++d) b(d) = rng.uniform01() - 0.5;
    const PairSampler sampler = [](int a, int b, Rng& r) {
        Eigen::VectorXd phi(2);
        phi << (a == b ? 0.5 : -0.5) + 0.3 * r.normal(), 0.3 * r.normal();
        return phi;
    };
    const double alpha = 0.8, w = 5.0;

    auto halves = [](int n) {
        std::vector<int> labels(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) labels[static_cast<std::size_t>(i)] = i < n / 2 ? 0 : 1;
        return Partition(2, labels);
    };
    const Partition small = halves(30), big = halves(60);
    const PopulationEstimate a =
        population_criterion(small, small, betas, spec, sampler, w, alpha, 200, 5);
    const PopulationEstimate b =
        population_criterion(big, big, betas, spec, sampler, w, alpha, 200, 5);

    // Monte Carlo substreams are keyed by class pair, not by n, so the
    // normalized values agree to rounding error.
    const double na = a.value / std::pow(30.0, 2.0 - alpha);
    const double nb = b.value / std::pow(60.0, 2.0 - alpha);
    CHECK(na == doctest::Approx(nb).epsilon(1e-12));
}

TEST_CASE("normalized population criterion sits just under the confusion functional") {
    const BlockModelSpec spec = two_block_spec(0.1, 0.25, 0.5, 0.5);
    const int n = 60;
    std::vector<int> labels(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) labels[static_cast<std::size_t>(i)] = i < n / 2 ? 0 : 1;
    const Partition truth(2, labels);
    std::vector<int> est_labels = labels;
    for (int i = 0; i < 6; ++i) est_labels[static_cast<std::size_t>(i)] = 1;
    const Partition est(2, est_labels);

    Rng rng(18);
    BetaSet betas(2, Eigen::VectorXd::Zero(2));
    for (auto& b : betas) {
        for (int d = 0; d < 2; ++d) b(d) = rng.normal();
        b *= 1.0 / std::max(1.0, b.norm());  // ||beta|| <= 1
    }
    // ||phi|| <= 1 by construction.
    const PairSampler sampler = [](int, int, Rng& r) {
        Eigen::VectorXd phi(2);
        phi << (2.0 * r.uniform01() - 1.0) / std::sqrt(2.0),
            (2.0 * r.uniform01() - 1.0) / std::sqrt(2.0);
        return phi;
    };
    const double w = 5.0, alpha = 1.0;
    const PopulationEstimate got =
        population_criterion(est, truth, betas, spec, sampler, w, alpha, 4000, 23);

    const double scale = w * std::pow(n, 2.0 - alpha);
    const double normalized = got.value / scale;
    const double g = g_functional(confusion_matrix(est, truth), spec.p, alpha);
    const double se = got.se / scale;
    const double gap = g - normalized;

    // The exp term is positive and at most e^{M_phi M_beta} max P per pair.
    const double cap = std::exp(1.0) * spec.p.maxCoeff() * 2.0 / w;
    CHECK(gap >= -3.0 * se);
    CHECK(gap <= cap + 3.0 * se);
}

TEST_CASE("population criterion validates its inputs") {
    const BlockModelSpec spec = two_block_spec(0.1, 0.25, 0.5, 0.5);
    const Partition part = Partition::constant(4, 2, 0);
    const PairSampler sampler = [](int, int, Rng&) { return Eigen::VectorXd::Zero(1); };
    CHECK_THROWS_AS(
        population_criterion(part, part, zero_betas(2, 1), spec, sampler, 5.0, 1.0, 1, 0),
        ConfigError);
    CHECK_THROWS_AS(
        population_criterion(part, part, zero_betas(3, 1), spec, sampler, 5.0, 1.0, 10, 0),
        DimensionError);
    CHECK_THROWS_AS(population_criterion(part, Partition::constant(4, 3, 2), zero_betas(2, 1),
                                         spec, sampler, 5.0, 1.0, 10, 0),
                    DimensionError);
}

TEST_CASE("condition report accepts a mildly assortative two-block model") {
    const BlockModelSpec spec = two_block_spec(0.1, 0.25, 2.0 / 3.0, 1.0 / 3.0);
    const ConditionReport report = check_conditions(spec, 1.0, 1.0, 5.0, 1.0);
    CHECK(report.weight_scale_ok);
    CHECK(report.proportions_ok);
    CHECK(report.assortative_ok);
    CHECK(report.alpha_lo == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(report.alpha_ok);
    CHECK(report.all_ok());
    CHECK(report.alpha_boundary);  // alpha = 1 sits on the upper endpoint

    const ConditionReport interior = check_conditions(spec, 1.0, 1.0, 5.0, 0.75);
    CHECK(interior.all_ok());
    CHECK_FALSE(interior.alpha_boundary);

    const ConditionReport lower = check_conditions(spec, 1.0, 1.0, 5.0, 0.5);
    CHECK(lower.alpha_ok);
    CHECK(lower.alpha_boundary);
}

TEST_CASE("condition report rejects strong between-community mixing") {
    // Off-diagonal 0.075: doubled it exceeds the within-density 0.1.
    const BlockModelSpec spec = two_block_spec(0.1, 0.75, 0.5, 0.5);
    const ConditionReport report = check_conditions(spec, 1.0, 1.0, 5.0, 1.0);
    CHECK_FALSE(report.assortative_ok);
    CHECK(report.worst_ratio == doctest::Approx(1.5).epsilon(1e-15));
    CHECK_FALSE(report.alpha_ok);  // alpha_lo = 1.5 leaves no valid alpha
    CHECK_FALSE(report.all_ok());
}

TEST_CASE("condition report flags a weak weight offset and thin communities") {
    const BlockModelSpec spec = two_block_spec(0.1, 0.25, 0.98, 0.02);
    const ConditionReport report = check_conditions(spec, 2.0, 1.0, 5.0, 1.0);
    CHECK_FALSE(report.weight_scale_ok);  // log 5 < 2
    CHECK_FALSE(report.proportions_ok);   // min pi below the 0.05 floor
}

TEST_CASE("condition report is vacuous on one block") {
    BlockModelSpec spec;
    spec.p = Eigen::MatrixXd::Constant(1, 1, 0.2);
    spec.pi = Eigen::VectorXd::Ones(1);
    const ConditionReport report = check_conditions(spec, 1.0, 1.0, 5.0, 1.0);
    CHECK(report.assortative_ok);
    CHECK(report.alpha_lo == 0.0);
    CHECK(report.all_ok());
}

TEST_CASE("random confusion search never beats the diagonal on a valid model") {
    const BlockModelSpec spec = two_block_spec(0.1, 0.25, 2.0 / 3.0, 1.0 / 3.0);
    const GSearchResult result = search_g_maximizer(spec, 1.0, 2000, 99);
    CHECK_FALSE(result.exceeded);
    CHECK(result.best_value == result.diag_value);
    CHECK(result.diag_value == doctest::Approx(0.1).epsilon(1e-14));
    CHECK_THROWS_AS(search_g_maximizer(spec, 1.0, 0, 99), ConfigError);
}

TEST_CASE("deviation medians come back finite and positive") {
    const std::vector<double> medians =
        criterion_deviation_medians({20, 40}, 0.3, 0.25, 5.0, 1.0, 5, 77);
    REQUIRE(medians.size() == 2);
    for (double m : medians) {
        CHECK(std::isfinite(m));
        CHECK(m >= 0.0);
    }
    CHECK_THROWS_AS(criterion_deviation_medians({21}, 0.3, 0.25, 5.0, 1.0, 5, 77), ConfigError);
    CHECK_THROWS_AS(criterion_deviation_medians({20}, 0.3, 0.25, 5.0, 1.0, 0, 77), ConfigError);
}
