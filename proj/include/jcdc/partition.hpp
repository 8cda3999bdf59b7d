#pragma once

#include <vector>

#include "jcdc/errors.hpp"

namespace jcdc {

// Node-to-community assignment. Labels are 0-based: labels[i] in [0, k).
// Empty communities are allowed (size counts simply come out zero).
struct Partition {
    int k = 0;
    std::vector<int> labels;

    Partition() = default;
    Partition(int k_, std::vector<int> labels_) : k(k_), labels(std::move(labels_)) {}

    int n() const { return static_cast<int>(labels.size()); }

    std::vector<int> sizes() const {
        std::vector<int> s(static_cast<std::size_t>(k), 0);
        for (int lab : labels) s[static_cast<std::size_t>(lab)]++;
        return s;
    }

    void validate() const {
        if (k < 1) throw ConfigError("partition: k must be >= 1");
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (labels[i] < 0 || labels[i] >= k)
                throw ConfigError("partition: label out of range at node " + std::to_string(i));
        }
    }

    static Partition constant(int n, int k = 1, int label = 0) {
        return Partition(k, std::vector<int>(static_cast<std::size_t>(n), label));
    }

    bool operator==(const Partition& o) const { return k == o.k && labels == o.labels; }
};

}  // namespace jcdc
