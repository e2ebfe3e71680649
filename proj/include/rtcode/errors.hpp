#pragma once

#include <stdexcept>
#include <string>

namespace rtcode {

// Error taxonomy mirrored by the CLI exit codes:
// validation 2, unsupported alphabet 3, solver 4, io 5.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Chain fails irreducibility or aperiodicity. Warning-grade: constructors
// may carry the flag, solvers refuse it.
struct NonErgodicError : ValidationError {
  using ValidationError::ValidationError;
};

struct UnsupportedAlphabetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Singular evaluation system (multichain policy) or a numerical failure.
struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace rtcode
