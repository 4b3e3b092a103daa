#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace bbsolve {

enum class ErrorKind {
    DegenerateInput,
    SyntaxError,
    UnsupportedForm,
    NotPolynomial,
    PrecisionExhausted,
    InsufficientDepth,
    OddOrder,
    NoRoots,
    InconsistentResonance,
    DepthTooSmall,
    HypothesisNotMet,
    EmptyInventory,
    SingularEncounter,
    ToleranceLoss,
    Inconclusive,
    PreconditionViolation,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message);

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

// Rejections from the equation parser. `position` is a 0-based character offset
// into the source text.
class ParseError : public Error {
public:
    ParseError(ErrorKind kind, std::size_t position, const std::string& message,
               std::vector<std::string> expected = {});

    std::size_t position() const noexcept { return position_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    std::size_t position_;
    std::vector<std::string> expected_;
};

} // namespace bbsolve
