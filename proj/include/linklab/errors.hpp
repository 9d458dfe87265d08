#ifndef LINKLAB_ERRORS_HPP
#define LINKLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace linklab {

// Instance is well-formed but lies outside what the solver guarantees
// (preconditions violated, or a best-effort branch ran out of options).
struct unsupported_instance : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A guaranteed step failed.  This always indicates a bug in the solver,
// never a property of the input.
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

// A search ran out of its node-expansion budget before reaching a verdict.
// Callers must not treat this as "no".
struct budget_exhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// No element satisfied a required predicate (e.g. path truncation).
struct not_found : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace linklab

#endif
