#pragma once

#include <stdexcept>
#include <string>

namespace wakeford {

/// Malformed group descriptor or set literal.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Input exceeds a documented size cap (group order, exact-count width, ...).
struct LimitError : std::runtime_error {
    explicit LimitError(const std::string& what) : std::runtime_error(what) {}
};

/// Operands belong to different groups, or an element index is out of range.
struct DomainError : std::invalid_argument {
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// An operation-specific precondition failed (empty set, size mismatch,
/// identity missing/present where required, ...).
struct PreconditionError : std::invalid_argument {
    explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

} // namespace wakeford
