// errors.hpp — exception taxonomy shared by all qed1d modules
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace qed1d {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// configuration / input problems
struct MissingKey : Error {
    explicit MissingKey(const std::string& key) : Error("missing required key: " + key) {}
};

struct NonPhysicalValue : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

// Collects every violated invariant in one throw, so a bad config is
// reported in full rather than one field at a time.
struct ValidationError : Error {
    std::vector<std::string> issues;
    explicit ValidationError(std::vector<std::string> list)
        : Error(join(list)), issues(std::move(list)) {}
private:
    static std::string join(const std::vector<std::string>& list) {
        std::string msg = "validation failed:";
        for (const auto& s : list) msg += "\n  - " + s;
        return msg;
    }
};

struct UnknownPreset : Error {
    explicit UnknownPreset(const std::string& name) : Error("unknown figure preset: " + name) {}
};

// perturbation engine
struct UnsupportedOrder : Error {
    explicit UnsupportedOrder(int order)
        : Error("diagram enumeration supports orders 1..3, got " + std::to_string(order)) {}
};

struct QuadratureNotConverged : Error {
    using Error::Error;
};

struct RegulatorMissing : Error {
    RegulatorMissing() : Error("mode sum requested with t0 = 0; the bare sum is log-divergent") {}
};

// lattice oracle
struct DimensionOverflow : Error {
    using Error::Error;
};

struct ToleranceNotMet : Error {
    using Error::Error;
};

} // namespace qed1d
