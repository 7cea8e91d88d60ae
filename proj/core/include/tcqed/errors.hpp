// errors.hpp — error categories thrown by the physics modules

#pragma once

#include <stdexcept>

namespace tcqed {

// A formula is evaluated at (or too close to) a pole.
struct singularity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The requested operation is only derived/valid in a different parameter
// regime (e.g. analytic edge states outside the topological phase).
struct unsupported_regime_error : std::domain_error {
    using std::domain_error::domain_error;
};

// An inversion has multiple solutions and no way to pick one.
struct ambiguity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An iterative procedure failed to reach its tolerance.
struct convergence_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A trace shows no revival to extract a period from.
struct no_oscillation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace tcqed
