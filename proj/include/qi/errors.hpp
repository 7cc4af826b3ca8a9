#ifndef QI_ERRORS_HPP
#define QI_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qi {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionError : Error {
    using Error::Error;
};
struct PreconditionError : Error {
    using Error::Error;
};
struct ConvergenceError : Error {
    using Error::Error;
};
struct NotPositiveError : Error {
    using Error::Error;
};
struct TraceError : Error {
    using Error::Error;
};
struct EnsembleError : Error {
    using Error::Error;
};
struct SeparableError : Error {
    using Error::Error;
};
struct IndexError : Error {
    using Error::Error;
};
struct ConfigError : Error {
    using Error::Error;
};
struct ContextError : Error {
    using Error::Error;
};
struct ModelError : Error {
    using Error::Error;
};
struct RangeError : Error {
    using Error::Error;
};
struct UsageError : Error {
    using Error::Error;
};
// An internal consistency check failed: some input slipped past its
// validation and violated an identity that should hold for all valid inputs.
struct InternalInvariantError : Error {
    using Error::Error;
};
struct ParseError : Error {
    using Error::Error;
};

} // namespace qi

#endif
