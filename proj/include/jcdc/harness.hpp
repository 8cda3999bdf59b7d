#pragma once
// Simulation grid over (out/in ratio r, feature signal strength mu): shared
// synthetic instances per cell/replicate, one NMI score per method, CSV
// heatmap emission.

#include <cstdint>
#include <string>
#include <vector>

#include "jcdc/features.hpp"
#include "jcdc/graph.hpp"
#include "jcdc/optimizer.hpp"

namespace jcdc {

enum class Method { jcdc_w5, jcdc_w15, sc, km };

Method parse_method(const std::string& name);
std::string method_name(Method m);
std::vector<Method> all_methods();

struct GridSpec {
    std::vector<double> r_values;
    std::vector<double> mu_values;
    int replications = 10;
    std::vector<Method> methods;
    SbmConfig base_sbm;            // out_in_ratio overridden per cell
    FeatureGenConfig base_features;  // mu overridden per cell
    FitConfig base_fit;            // w overridden per method
    std::uint64_t master_seed = 0;
    int threads = 1;

    void validate() const;

    // 3x3 grid, 10 replicates: quick qualitative picture.
    static GridSpec desk(std::uint64_t seed);
    // 11x7 grid, 30 replicates: the full sweep (slow).
    static GridSpec paper(std::uint64_t seed);
};

struct CellStats {
    std::vector<double> replicate_nmi;  // NaN marks a failed replicate
    double mean_nmi = 0.0;              // over non-failed replicates
    double sd_nmi = 0.0;
    double mean_seconds = 0.0;
    int failures = 0;
};

struct GridResult {
    std::vector<double> r_values;
    std::vector<double> mu_values;
    std::vector<Method> methods;
    int replications = 0;
    std::uint64_t master_seed = 0;
    // cells[method][mu_idx][r_idx]
    std::vector<std::vector<std::vector<CellStats>>> cells;

    const CellStats& cell(Method m, int mu_idx, int r_idx) const;
};

// Runs every (cell, replicate) instance: one generated (graph, features) pair
// shared by all methods of that replicate; per-method NMI against the truth.
// Instances execute in parallel when spec.threads > 1; results are identical
// for any thread count.
GridResult run_grid(const GridSpec& spec);

// One CSV per method: header "mu\r,<r1>,...", one row per mu, cells with 4
// decimals. Returns the written path.
std::string emit_heatmap_data(const GridResult& result, Method m, const std::string& dir);

}  // namespace jcdc
