#include "jcdc/features.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "jcdc/errors.hpp"
#include "jcdc/partition.hpp"
#include "jcdc/rng.hpp"

namespace jcdc {

FeatureKind parse_feature_kind(const std::string& s) {
    if (s == "cont" || s == "continuous") return FeatureKind::continuous;
    if (s == "cat" || s == "categorical") return FeatureKind::categorical;
    if (s == "ord" || s == "ordinal") return FeatureKind::ordinal;
    throw ConfigError("unknown feature kind '" + s + "' (expected cont/cat/ord)");
}

std::string feature_kind_name(FeatureKind k) {
    switch (k) {
        case FeatureKind::continuous: return "cont";
        case FeatureKind::categorical: return "cat";
        case FeatureKind::ordinal: return "ord";
    }
    return "?";
}

void FeatureTable::validate() const {
    if (kinds.size() != static_cast<std::size_t>(p()))
        throw DimensionError("feature table: kinds count != column count");
    if (!names.empty() && names.size() != static_cast<std::size_t>(p()))
        throw DimensionError("feature table: names count != column count");
    for (int j = 0; j < p(); ++j)
        for (int i = 0; i < n(); ++i)
            if (!std::isfinite(values(i, j)))
                throw ConfigError("feature table: non-finite value at row " + std::to_string(i) +
                                  " col " + std::to_string(j));
    for (int j = 0; j < p(); ++j) {
        if (kinds[static_cast<std::size_t>(j)] != FeatureKind::categorical) continue;
        for (int i = 0; i < n(); ++i) {
            const double v = values(i, j);
            if (v != std::floor(v))
                throw ConfigError("feature table: categorical column " + std::to_string(j) +
                                  " has non-integer level");
        }
    }
}

FeatureTable generate_features(const Partition& truth, const FeatureGenConfig& config) {
    if (config.n_noise < 0) throw ConfigError("feature gen: n_noise must be >= 0");
    const int n = truth.n();
    const int p = 1 + config.n_noise;
    FeatureTable table;
    table.values.resize(n, p);
    table.kinds.assign(static_cast<std::size_t>(p), FeatureKind::continuous);
    table.names.resize(static_cast<std::size_t>(p));
    table.names[0] = "signal";
    for (int j = 1; j < p; ++j) table.names[static_cast<std::size_t>(j)] = "noise" + std::to_string(j);

    for (int j = 0; j < p; ++j) {
        Rng rng(substream_key(config.seed, {static_cast<std::uint64_t>(j)}));
        for (int i = 0; i < n; ++i) {
            double shift = 0.0;
            if (j == 0) shift = truth.labels[static_cast<std::size_t>(i)] == 0 ? config.mu : -config.mu;
            table.values(i, j) = shift + rng.normal();
        }
    }
    return table;
}

FeatureTable expand_categoricals(const FeatureTable& table) {
    table.validate();
    const int n = table.n();
    std::vector<Eigen::VectorXd> cols;
    std::vector<FeatureKind> kinds;
    std::vector<std::string> names;
    for (int j = 0; j < table.p(); ++j) {
        const std::string base =
            table.names.empty() ? "col" + std::to_string(j) : table.names[static_cast<std::size_t>(j)];
        if (table.kinds[static_cast<std::size_t>(j)] != FeatureKind::categorical) {
            cols.push_back(table.values.col(j));
            kinds.push_back(table.kinds[static_cast<std::size_t>(j)]);
            names.push_back(base);
            continue;
        }
        std::vector<double> levels;
        for (int i = 0; i < n; ++i) levels.push_back(table.values(i, j));
        std::sort(levels.begin(), levels.end());
        levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
        // First (smallest) level is the baseline; one indicator per remaining level.
        // Indicators are plain 0/1 numeric columns, so downstream code (similarity
        // standardization, k-means) treats them as continuous.
        for (std::size_t lv = 1; lv < levels.size(); ++lv) {
            Eigen::VectorXd col(n);
            for (int i = 0; i < n; ++i) col(i) = table.values(i, j) == levels[lv] ? 1.0 : 0.0;
            cols.push_back(col);
            kinds.push_back(FeatureKind::continuous);
            std::ostringstream name;
            name << base << '=' << levels[lv];
            names.push_back(name.str());
        }
    }
    FeatureTable out;
    out.values.resize(n, static_cast<Eigen::Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) out.values.col(static_cast<Eigen::Index>(c)) = cols[c];
    out.kinds = std::move(kinds);
    out.names = std::move(names);
    return out;
}

std::size_t SimilaritySet::pair_index(int i, int j) const {
    if (i > j) std::swap(i, j);
    // Row-major upper triangle: pairs (i, i+1..n-1) start after i full rows.
    const std::size_t ui = static_cast<std::size_t>(i);
    const std::size_t un = static_cast<std::size_t>(n_);
    return ui * un - ui * (ui + 1) / 2 + static_cast<std::size_t>(j) - ui - 1;
}

Eigen::VectorXd SimilaritySet::phi(int i, int j) const {
    if (i == j) throw ConfigError("similarity: pair requires distinct nodes");
    Eigen::VectorXd v(dim_);
    const double* row = data_.data() + pair_index(i, j) * static_cast<std::size_t>(dim_);
    for (int d = 0; d < dim_; ++d) v(d) = row[d];
    return v;
}

double SimilaritySet::phi_dot(int i, int j, const Eigen::VectorXd& beta) const {
    const double* row = data_.data() + pair_index(i, j) * static_cast<std::size_t>(dim_);
    double s = 0.0;
    for (int d = 0; d < dim_; ++d) s += row[d] * beta(d);
    return s;
}

bool SimilaritySet::any_constant() const {
    for (bool c : constant_)
        if (c) return true;
    return false;
}

SimilaritySet build_similarities(const FeatureTable& table) {
    table.validate();
    const int n = table.n();
    const int p = table.p();
    if (n < 2) throw ConfigError("similarity: need at least 2 nodes");

    SimilaritySet set;
    set.n_ = n;
    set.dim_ = p;
    set.names_ = table.names;
    const std::size_t npairs = static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2;
    set.data_.assign(npairs * static_cast<std::size_t>(p), 0.0);

    // Raw similarities, then standardize each dimension over all pairs.
    for (int d = 0; d < p; ++d) {
        const bool categorical = table.kinds[static_cast<std::size_t>(d)] == FeatureKind::categorical;
        std::size_t idx = 0;
        for (int i = 0; i < n; ++i) {
            const double xi = table.values(i, d);
            for (int j = i + 1; j < n; ++j, ++idx) {
                const double xj = table.values(j, d);
                const double s = categorical ? (xi == xj ? 1.0 : 0.0) : -std::abs(xi - xj);
                set.data_[idx * static_cast<std::size_t>(p) + static_cast<std::size_t>(d)] = s;
            }
        }
    }

    set.means_.assign(static_cast<std::size_t>(p), 0.0);
    set.sds_.assign(static_cast<std::size_t>(p), 0.0);
    set.constant_.assign(static_cast<std::size_t>(p), false);
    for (int d = 0; d < p; ++d) {
        double mean = 0.0;
        for (std::size_t q = 0; q < npairs; ++q)
            mean += set.data_[q * static_cast<std::size_t>(p) + static_cast<std::size_t>(d)];
        mean /= static_cast<double>(npairs);
        double var = 0.0;
        for (std::size_t q = 0; q < npairs; ++q) {
            const double diff =
                set.data_[q * static_cast<std::size_t>(p) + static_cast<std::size_t>(d)] - mean;
            var += diff * diff;
        }
        var /= static_cast<double>(npairs);  // population variance over pairs
        const double sd = std::sqrt(var);
        set.means_[static_cast<std::size_t>(d)] = mean;
        set.sds_[static_cast<std::size_t>(d)] = sd;
        if (sd == 0.0) {
            set.constant_[static_cast<std::size_t>(d)] = true;
            for (std::size_t q = 0; q < npairs; ++q)
                set.data_[q * static_cast<std::size_t>(p) + static_cast<std::size_t>(d)] = 0.0;
        } else {
            for (std::size_t q = 0; q < npairs; ++q) {
                double& v = set.data_[q * static_cast<std::size_t>(p) + static_cast<std::size_t>(d)];
                v = (v - mean) / sd;
            }
        }
    }

    double max_sq = 0.0;
    for (std::size_t q = 0; q < npairs; ++q) {
        double sq = 0.0;
        for (int d = 0; d < p; ++d) {
            const double v = set.data_[q * static_cast<std::size_t>(p) + static_cast<std::size_t>(d)];
            sq += v * v;
        }
        max_sq = std::max(max_sq, sq);
    }
    set.max_norm_ = std::sqrt(max_sq);
    return set;
}

FeatureTable read_feature_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path, 0, "cannot open file");
    std::string line;
    long lineno = 0;

    auto split = [](const std::string& s) {
        std::vector<std::string> parts;
        std::string cur;
        for (char c : s) {
            if (c == ',') {
                parts.push_back(cur);
                cur.clear();
            } else if (c != '\r') {
                cur += c;
            }
        }
        parts.push_back(cur);
        return parts;
    };

    if (!std::getline(in, line)) throw ParseError(path, 0, "empty file");
    ++lineno;
    FeatureTable table;
    const std::vector<std::string> header = split(line);
    if (header.empty() || header[0] != "node_id")
        throw ParseError(path, lineno, "first header column must be 'node_id'");
    for (std::size_t h = 1; h < header.size(); ++h) {
        // Feature columns are "name" or "name:kind"; bare names default to
        // continuous (the CLI declares kinds separately).
        const std::string& cell = header[h];
        const std::size_t colon = cell.rfind(':');
        if (colon == std::string::npos) {
            table.names.push_back(cell);
            table.kinds.push_back(FeatureKind::continuous);
            continue;
        }
        table.names.push_back(cell.substr(0, colon));
        try {
            table.kinds.push_back(parse_feature_kind(cell.substr(colon + 1)));
        } catch (const ConfigError& e) {
            throw ParseError(path, lineno, e.what());
        }
    }
    const int p = static_cast<int>(table.kinds.size());

    std::vector<std::vector<double>> rows;
    std::vector<long long> ids;
    std::vector<long> row_lines;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        const std::vector<std::string> cells = split(line);
        if (static_cast<int>(cells.size()) != p + 1)
            throw ParseError(path, lineno,
                             "expected " + std::to_string(p + 1) + " cells, got " +
                                 std::to_string(cells.size()));
        std::vector<double> row;
        row.reserve(static_cast<std::size_t>(p));
        for (std::size_t c = 0; c < cells.size(); ++c) {
            const std::string& cell = cells[c];
            if (c == 0) {
                std::size_t used = 0;
                long long id;
                try {
                    id = std::stoll(cell, &used);
                } catch (const std::exception&) {
                    throw ParseError(path, lineno, "bad node_id '" + cell + "'");
                }
                if (used != cell.size() || id < 0)
                    throw ParseError(path, lineno, "bad node_id '" + cell + "'");
                ids.push_back(id);
                continue;
            }
            std::size_t used = 0;
            double v;
            try {
                v = std::stod(cell, &used);
            } catch (const std::exception&) {
                throw ParseError(path, lineno, "bad number '" + cell + "'");
            }
            if (used != cell.size()) throw ParseError(path, lineno, "bad number '" + cell + "'");
            row.push_back(v);
        }
        rows.push_back(std::move(row));
        row_lines.push_back(lineno);
    }

    // Node ids must cover 0..n-1 exactly once; rows may appear in any order.
    const std::size_t n = rows.size();
    table.values.resize(static_cast<Eigen::Index>(n), p);
    std::vector<char> seen(n, 0);
    for (std::size_t r = 0; r < n; ++r) {
        const long long id = ids[r];
        if (id >= static_cast<long long>(n))
            throw ParseError(path, row_lines[r],
                             "node_id " + std::to_string(id) + " out of range for " +
                                 std::to_string(n) + " rows");
        if (seen[static_cast<std::size_t>(id)])
            throw ParseError(path, row_lines[r], "duplicate node_id " + std::to_string(id));
        seen[static_cast<std::size_t>(id)] = 1;
        for (int j = 0; j < p; ++j)
            table.values(static_cast<Eigen::Index>(id), j) = rows[r][static_cast<std::size_t>(j)];
    }
    try {
        table.validate();
    } catch (const std::exception& e) {
        throw ParseError(path, 0, e.what());
    }
    return table;
}

void write_feature_csv(const FeatureTable& table, const std::string& path) {
    table.validate();
    std::ofstream out(path);
    if (!out) throw ComputeError("cannot write " + path);
    out << "node_id";
    for (int j = 0; j < table.p(); ++j) {
        const std::string name =
            table.names.empty() ? "col" + std::to_string(j) : table.names[static_cast<std::size_t>(j)];
        out << ',' << name << ':' << feature_kind_name(table.kinds[static_cast<std::size_t>(j)]);
    }
    out << '\n';
    out.precision(17);
    for (int i = 0; i < table.n(); ++i) {
        out << i;
        for (int j = 0; j < table.p(); ++j) out << ',' << table.values(i, j);
        out << '\n';
    }
    if (!out) throw ComputeError("write failed for " + path);
}

}  // namespace jcdc
