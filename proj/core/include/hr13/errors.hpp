#pragma once

#include <stdexcept>
#include <string>

namespace hr13 {

/// Input violates an operation's precondition (bad mass, cutoff, non-spacelike
/// separation, unresolved grid, ...).
class PreconditionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A Fock-space creation would exceed the total-occupation truncation.
class TruncationOverflow : public PreconditionError {
public:
  using PreconditionError::PreconditionError;
};

/// Frame fixing is impossible: equal masses and j_{μν}j^{μν} <= 0.
class FrameFixInfeasible : public PreconditionError {
public:
  using PreconditionError::PreconditionError;
};

/// One-particle-sector operation applied to a state outside that sector.
class SectorMismatch : public PreconditionError {
public:
  using PreconditionError::PreconditionError;
};

/// Numerical failure during a computation (Newton non-convergence, NaN, ...).
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace hr13
