#ifndef IFALIGN_ERRORS_HPP
#define IFALIGN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ifalign {

enum class Err {
    CoordinateOutOfRange,
    FrozenIndexMiss,
    DegenerateScore,
    NoChildren,
    TooLarge,
    NonMonotoneAlignment,
    IndexOutOfRange,
    EmptyMatrix,
    NoSuccessors,
    IllegalTransition,
    GenerationFailure,
    NoPathFound,
    LineSearchFailure,
    ChecksumMismatch,
    UnknownVersion,
    IdMismatch,
    DataError,
    UsageError,
};

const char* err_name(Err e);

/// Exception carrying a machine-readable error code alongside the message.
class Error : public std::runtime_error {
public:
    Error(Err code, const std::string& detail)
        : std::runtime_error(std::string(err_name(code)) + ": " + detail), code_(code) {}

    Err code() const { return code_; }

private:
    Err code_;
};

/// Outcome of a structural validation pass. `ok()` means all invariants hold;
/// otherwise `code` names the first violated invariant.
struct Validation {
    std::string code;    // empty when valid
    std::string detail;

    bool ok() const { return code.empty(); }

    static Validation pass() { return {}; }
    static Validation fail(std::string c, std::string d) { return {std::move(c), std::move(d)}; }
};

}  // namespace ifalign

#endif
