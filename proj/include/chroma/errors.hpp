#pragma once

#include <stdexcept>
#include <string>

namespace chroma {

// Input violates an operation precondition (bad arguments, unusable config).
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Geometrically degenerate input that the algorithms cannot triangulate
// (all points collinear, duplicate points, ...).
struct DegenerateInputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A derived quantity violates an identity that holds in exact arithmetic;
// indicates a bug or a pruning failure upstream.
struct InconsistencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Periodic (torus) construction could not be certified sound for this input.
struct TorusRangeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace chroma
