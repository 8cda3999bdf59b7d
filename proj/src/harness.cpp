#include "jcdc/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <thread>

#include "jcdc/baselines.hpp"
#include "jcdc/errors.hpp"
#include "jcdc/metrics.hpp"
#include "jcdc/rng.hpp"

namespace jcdc {

namespace {

constexpr std::uint64_t kTagInstance = 0x917d;
constexpr std::uint64_t kTagGraph = 0x6772;
constexpr std::uint64_t kTagFeatures = 0xfea7;
constexpr std::uint64_t kTagMethod = 0x3e7d;

std::string format4(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

}  // namespace

Method parse_method(const std::string& name) {
    if (name == "jcdc_w5") return Method::jcdc_w5;
    if (name == "jcdc_w15") return Method::jcdc_w15;
    if (name == "sc") return Method::sc;
    if (name == "km") return Method::km;
    throw ConfigError("unknown method '" + name + "' (valid: jcdc_w5, jcdc_w15, sc, km)");
}

std::string method_name(Method m) {
    switch (m) {
        case Method::jcdc_w5: return "jcdc_w5";
        case Method::jcdc_w15: return "jcdc_w15";
        case Method::sc: return "sc";
        case Method::km: return "km";
    }
    return "?";
}

std::vector<Method> all_methods() {
    return {Method::jcdc_w5, Method::jcdc_w15, Method::sc, Method::km};
}

void GridSpec::validate() const {
    if (r_values.empty() || mu_values.empty()) throw ConfigError("grid: r and mu lists must be nonempty");
    if (replications < 1) throw ConfigError("grid: replications must be >= 1");
    if (methods.empty()) throw ConfigError("grid: method list must be nonempty");
    if (threads < 1) throw ConfigError("grid: threads must be >= 1");
    base_sbm.validate();
    for (double r : r_values)
        if (!(r >= 0.0) || r > 1.0) throw ConfigError("grid: r values must be in [0, 1]");
}

GridSpec GridSpec::desk(std::uint64_t seed) {
    GridSpec spec;
    spec.r_values = {0.25, 0.45, 0.65};
    spec.mu_values = {0.5, 1.25, 2.0};
    spec.replications = 10;
    spec.methods = all_methods();
    spec.base_sbm.community_sizes = {100, 50};
    spec.base_sbm.within_prob = 0.1;
    spec.base_sbm.hub_fraction = 0.05;
    spec.base_sbm.hub_theta = 10.0;
    spec.base_sbm.prob_cap = 0.99;
    spec.base_features.n_noise = 1;
    spec.base_fit.k = 2;
    spec.master_seed = seed;
    return spec;
}

GridSpec GridSpec::paper(std::uint64_t seed) {
    GridSpec spec = desk(seed);
    spec.r_values.clear();
    for (int i = 0; i <= 10; ++i) spec.r_values.push_back(0.25 + 0.05 * i);  // 0.25 .. 0.75
    spec.mu_values.clear();
    for (int i = 0; i <= 6; ++i) spec.mu_values.push_back(0.5 + 0.25 * i);  // 0.5 .. 2.0
    spec.replications = 30;
    return spec;
}

const CellStats& GridResult::cell(Method m, int mu_idx, int r_idx) const {
    for (std::size_t mi = 0; mi < methods.size(); ++mi)
        if (methods[mi] == m)
            return cells[mi][static_cast<std::size_t>(mu_idx)][static_cast<std::size_t>(r_idx)];
    throw ConfigError("grid result: method " + method_name(m) + " not present");
}

namespace {

struct ReplicateScore {
    double nmi = std::numeric_limits<double>::quiet_NaN();
    double seconds = 0.0;
};

ReplicateScore run_method(Method m, const Graph& graph, const Partition& truth,
                          const FeatureTable& features, const GridSpec& spec,
                          std::uint64_t method_seed) {
    ReplicateScore score;
    const auto t0 = std::chrono::steady_clock::now();
    Partition estimate(1, std::vector<int>(static_cast<std::size_t>(graph.n()), 0));
    switch (m) {
        case Method::jcdc_w5:
        case Method::jcdc_w15: {
            FitConfig fc = spec.base_fit;
            fc.k = spec.base_sbm.k();
            fc.w = m == Method::jcdc_w5 ? 5.0 : 1.5;
            fc.seed = method_seed;
            estimate = fit(graph, features, fc).partition;
            break;
        }
        case Method::sc: {
            SpectralConfig sc;
            sc.k = spec.base_sbm.k();
            sc.seed = method_seed;
            estimate = spectral_clustering(graph, sc);
            break;
        }
        case Method::km: {
            KmeansConfig km;
            km.k = spec.base_sbm.k();
            km.seed = method_seed;
            estimate = kmeans(features.values, km).partition;
            break;
        }
    }
    score.nmi = nmi(estimate, truth);
    score.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return score;
}

}  // namespace

GridResult run_grid(const GridSpec& spec) {
    spec.validate();
    const int nr = static_cast<int>(spec.r_values.size());
    const int nmu = static_cast<int>(spec.mu_values.size());
    const int reps = spec.replications;
    const int nm = static_cast<int>(spec.methods.size());

    GridResult result;
    result.r_values = spec.r_values;
    result.mu_values = spec.mu_values;
    result.methods = spec.methods;
    result.replications = reps;
    result.master_seed = spec.master_seed;
    result.cells.assign(static_cast<std::size_t>(nm),
                        std::vector<std::vector<CellStats>>(
                            static_cast<std::size_t>(nmu),
                            std::vector<CellStats>(static_cast<std::size_t>(nr))));
    for (auto& per_method : result.cells)
        for (auto& per_mu : per_method)
            for (auto& cell : per_mu)
                cell.replicate_nmi.assign(static_cast<std::size_t>(reps),
                                          std::numeric_limits<double>::quiet_NaN());

    std::vector<std::vector<double>> seconds(
        static_cast<std::size_t>(nm),
        std::vector<double>(static_cast<std::size_t>(nmu * nr * reps), 0.0));

    // One work item per (cell, replicate): generate the shared instance, then
    // score every method on it. The instance seed ignores the method so all
    // methods see identical data.
    auto run_instance = [&](int flat) {
        const int r_idx = flat % nr;
        const int mu_idx = (flat / nr) % nmu;
        const int rep = flat / (nr * nmu);
        const std::uint64_t instance_seed = substream_key(
            spec.master_seed, {kTagInstance, static_cast<std::uint64_t>(r_idx),
                               static_cast<std::uint64_t>(mu_idx), static_cast<std::uint64_t>(rep)});

        SbmConfig sbm = spec.base_sbm;
        sbm.out_in_ratio = spec.r_values[static_cast<std::size_t>(r_idx)];
        sbm.seed = substream_key(instance_seed, {kTagGraph});
        auto [graph, truth] = generate_dcsbm(sbm);

        FeatureGenConfig fg = spec.base_features;
        fg.mu = spec.mu_values[static_cast<std::size_t>(mu_idx)];
        fg.seed = substream_key(instance_seed, {kTagFeatures});
        const FeatureTable features = generate_features(truth, fg);

        for (int mi = 0; mi < nm; ++mi) {
            const Method m = spec.methods[static_cast<std::size_t>(mi)];
            const std::uint64_t method_seed = substream_key(
                instance_seed, {kTagMethod, static_cast<std::uint64_t>(m)});
            ReplicateScore score;
            try {
                score = run_method(m, graph, truth, features, spec, method_seed);
            } catch (const std::exception&) {
                // Failure recorded as a missing NMI; the grid keeps going.
            }
            result.cells[static_cast<std::size_t>(mi)][static_cast<std::size_t>(mu_idx)]
                        [static_cast<std::size_t>(r_idx)]
                            .replicate_nmi[static_cast<std::size_t>(rep)] = score.nmi;
            seconds[static_cast<std::size_t>(mi)][static_cast<std::size_t>(flat)] = score.seconds;
        }
    };

    const int total = nr * nmu * reps;
    if (spec.threads <= 1) {
        for (int flat = 0; flat < total; ++flat) run_instance(flat);
    } else {
        std::atomic<int> next{0};
        auto worker = [&]() {
            while (true) {
                const int flat = next.fetch_add(1);
                if (flat >= total) break;
                run_instance(flat);
            }
        };
        std::vector<std::thread> pool;
        for (int t = 0; t < std::min(spec.threads, total); ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    // Aggregate over replicates; failed replicates stay out of the moments.
    for (int mi = 0; mi < nm; ++mi) {
        for (int mu_idx = 0; mu_idx < nmu; ++mu_idx) {
            for (int r_idx = 0; r_idx < nr; ++r_idx) {
                CellStats& cell = result.cells[static_cast<std::size_t>(mi)]
                                              [static_cast<std::size_t>(mu_idx)]
                                              [static_cast<std::size_t>(r_idx)];
                double sum = 0.0, sumsq = 0.0;
                int ok = 0;
                for (double v : cell.replicate_nmi) {
                    if (std::isnan(v)) {
                        cell.failures++;
                        continue;
                    }
                    sum += v;
                    sumsq += v * v;
                    ok++;
                }
                cell.mean_nmi = ok > 0 ? sum / ok : std::numeric_limits<double>::quiet_NaN();
                cell.sd_nmi = ok > 1 ? std::sqrt(std::max(0.0, (sumsq - sum * sum / ok) / (ok - 1)))
                                     : 0.0;
                double sec = 0.0;
                for (int rep = 0; rep < reps; ++rep)
                    sec += seconds[static_cast<std::size_t>(mi)]
                                  [static_cast<std::size_t>(rep * nr * nmu + mu_idx * nr + r_idx)];
                cell.mean_seconds = sec / reps;
            }
        }
    }
    return result;
}

std::string emit_heatmap_data(const GridResult& result, Method m, const std::string& dir) {
    const std::string path = dir + "/nmi_" + method_name(m) + ".csv";
    std::ofstream out(path);
    if (!out) throw ComputeError("cannot write " + path);
    out << "mu\\r";
    for (double r : result.r_values) out << ',' << format4(r);
    out << '\n';
    for (std::size_t mu_idx = 0; mu_idx < result.mu_values.size(); ++mu_idx) {
        out << format4(result.mu_values[mu_idx]);
        for (std::size_t r_idx = 0; r_idx < result.r_values.size(); ++r_idx) {
            const CellStats& cell =
                result.cell(m, static_cast<int>(mu_idx), static_cast<int>(r_idx));
            out << ',';
            if (std::isnan(cell.mean_nmi))
                out << "nan";
            else
                out << format4(cell.mean_nmi);
        }
        out << '\n';
    }
    if (!out) throw ComputeError("write failed for " + path);
    return path;
}

}  // namespace jcdc
