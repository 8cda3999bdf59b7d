#pragma once

#include <stdexcept>
#include <string>

namespace jcdc {

// Invalid configuration or flag values.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input file. Carries the offending location for diagnostics.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string path, long line, const std::string& msg)
        : std::runtime_error(path + ":" + std::to_string(line) + ": " + msg),
          path_(std::move(path)), line_(line) {}

    const std::string& path() const noexcept { return path_; }
    long line() const noexcept { return line_; }

private:
    std::string path_;
    long line_;
};

// Inputs parsed fine but their shapes do not agree (e.g. feature table
// does not cover the graph's nodes).
class DimensionError : public std::runtime_error {
public:
    explicit DimensionError(const std::string& msg) : std::runtime_error(msg) {}
};

// A numerical routine cannot proceed (degenerate Laplacian, etc.).
class ComputeError : public std::runtime_error {
public:
    explicit ComputeError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace jcdc
