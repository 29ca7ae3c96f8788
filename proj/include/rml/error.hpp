#pragma once

#include <stdexcept>
#include <string>

namespace rml {

/// Malformed or out-of-contract input (bad vertex ids, shape mismatches,
/// illegal edges, inconsistent families).
class InputError : public std::invalid_argument
{
public:
    explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// A configured ceiling (LP size, enumeration budget, scale limit) was hit.
class ResourceError : public std::runtime_error
{
public:
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rml
