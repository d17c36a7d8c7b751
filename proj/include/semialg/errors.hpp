#pragma once

#include <stdexcept>
#include <string>

namespace semialg {

// Precondition or invariant breach in caller-supplied data.
struct ContractViolation : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// An exhaustive search or enumeration refused to start (or stopped) because
// it would exceed its configured budget.
struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The requested (dimension, degree, cell-kind) combination has no backend.
struct BackendUnsupported : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A randomized construction exhausted its retry allowance.
struct RetriesExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace semialg
