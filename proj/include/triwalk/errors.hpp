#pragma once

#include <stdexcept>

namespace triwalk {

// Requested evolution does not fit the preallocated lattice, or exceeds
// the configured resource limits.
struct capacity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed or out-of-range experiment configuration.
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace triwalk
