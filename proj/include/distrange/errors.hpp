#ifndef DISTRANGE_ERRORS_HPP
#define DISTRANGE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace distrange {

// Base class for all engine errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A structural invariant of a graph/tree/interval family is violated.
struct InvariantError : Error {
    explicit InvariantError(const std::string& what) : Error(what) {}
};

// An operation was called on the wrong problem variant.
struct VariantError : Error {
    explicit VariantError(const std::string& what) : Error(what) {}
};

// A stated precondition fails; the message names the predicate and,
// where available, the counterexample.
struct PreconditionError : Error {
    explicit PreconditionError(const std::string& what) : Error(what) {}
};

// Input document could not be parsed or validated.
struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(what) {}
};

} // namespace distrange

#endif
