#pragma once

#include <stdexcept>
#include <string>

namespace smmc {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// bad user configuration (unknown problem/method, missing keys, ...)
struct ConfigError : Error {
    using Error::Error;
};

// threshold does not sit on a bin edge
struct AlignmentError : Error {
    using Error::Error;
};

// value outside the active domain where the caller promised otherwise
struct DomainError : Error {
    using Error::Error;
};

// a subset-simulation level produced no sample above its threshold
struct DegenerateLevelError : Error {
    using Error::Error;
};

// requested quantile below what the estimate can resolve
struct ResolutionError : Error {
    ResolutionError(const std::string& msg, double smallest)
        : Error(msg), smallest_ccdf(smallest) {}
    double smallest_ccdf;
};

} // namespace smmc
