#pragma once

#include <stdexcept>
#include <string>

namespace rabi {

class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// adaptive truncation hit the cap with tail weight still above threshold
class NonConvergence : public SolverError {
public:
    using SolverError::SolverError;
};

// extremal-eigenpair iteration stalled
class IterationLimit : public SolverError {
public:
    using SolverError::SolverError;
};

// conditional displacement requested for a spin component with ~zero weight
class VanishingWeight : public SolverError {
public:
    using SolverError::SolverError;
};

// variational state norm underflow
class DegenerateState : public SolverError {
public:
    using SolverError::SolverError;
};

// root bracket could not be established (or the transition does not exist)
class NoSignChange : public SolverError {
public:
    using SolverError::SolverError;
};

} // namespace rabi
