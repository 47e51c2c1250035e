#pragma once

#include <stdexcept>
#include <string>

namespace vicsek {

/// Base class for every error raised by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A requested level, depth or dimension exceeds a configured cap.
class resource_limit : public error {
public:
    using error::error;
};

/// Decimation through a forbidden eigenvalue was requested.
class forbidden_eigenvalue : public error {
public:
    forbidden_eigenvalue(const std::string& root_name, double lambda)
        : error("forbidden eigenvalue " + root_name + " (lambda = " + std::to_string(lambda) + ")"),
          root_(root_name) {}

    const std::string& root() const noexcept { return root_; }

private:
    std::string root_;
};

/// Input outside the domain of an operation (e.g. y outside a branch range).
class domain_error : public error {
public:
    using error::error;
};

/// An iterative solver stopped without meeting its tolerance.
class convergence_failure : public error {
public:
    using error::error;
};

/// A field or address was paired with a graph of a different level.
class level_mismatch : public error {
public:
    using error::error;
};

/// A computed quantity violated an internal consistency check.
class consistency_error : public error {
public:
    using error::error;
};

}  // namespace vicsek
