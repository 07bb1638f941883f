#pragma once

#include <stdexcept>
#include <string>

namespace dimcert {

/// Malformed or out-of-contract input (bad probabilities, shape mismatch, ...).
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// A computation was refused because it would exceed a configured resource cap.
class ResourceLimitError : public std::runtime_error {
public:
    ResourceLimitError(const std::string& what, unsigned long long requested, unsigned long long cap)
        : std::runtime_error(what), requested_(requested), cap_(cap) {}

    unsigned long long requested() const { return requested_; }
    unsigned long long cap() const { return cap_; }

private:
    unsigned long long requested_;
    unsigned long long cap_;
};

/// Numerical failure that survived all fallbacks; never reported as a verdict.
class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace dimcert
