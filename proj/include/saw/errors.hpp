#ifndef SAW_ERRORS_HPP
#define SAW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace saw {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A guarded quantity (walk length, truncation order) exceeded what the
// expanded ball can answer exactly.
struct GuardError : Error {
    using Error::Error;
};

// Rewriting exceeded its step budget.
struct NonterminationError : Error {
    using Error::Error;
};

// A Cayley spec or graph file violates a structural requirement.
struct InvalidSpecError : Error {
    using Error::Error;
};

// A block or 3-block did not close inside the expanded ball.
struct RadiusError : Error {
    using Error::Error;
};

// An apparent 3-block grew past the configured size bound.
struct EndSizeError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

// Grammar or polynomial system fails the properness requirements.
struct PropernessError : Error {
    using Error::Error;
};

} // namespace saw

#endif
