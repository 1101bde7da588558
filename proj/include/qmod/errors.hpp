#pragma once

#include <stdexcept>
#include <string>

namespace qmod {

/// Inputs whose shapes/keys do not fit together (wrong vector length,
/// unknown vertex, mismatched truncation degrees).
struct StructuralError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Inputs outside an operation's mathematical domain (zero dimension
/// vector for a slope, inadmissible stability parameter, odd truncation).
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A computation refused because it would exceed an enumeration budget.
/// Budgets are hard refusals, never silent truncation.
struct BudgetError : std::runtime_error {
    BudgetError(const std::string& what, double required_count)
        : std::runtime_error(what), required(required_count) {}
    double required;
};

/// An internal invariant the theory guarantees failed to hold (e.g. a
/// non-unique maximal destabilizing subrepresentation). Maps to exit
/// code 4 in the CLI.
struct ConsistencyError : std::logic_error {
    using std::logic_error::logic_error;
};

/// Malformed input files.
struct FileParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace qmod
