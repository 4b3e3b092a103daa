#include <bbsolve/error.hpp>

#include <utility>

namespace bbsolve {

const char* to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnsupportedForm: return "UnsupportedForm";
    case ErrorKind::NotPolynomial: return "NotPolynomial";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::InsufficientDepth: return "InsufficientDepth";
    case ErrorKind::OddOrder: return "OddOrder";
    case ErrorKind::NoRoots: return "NoRoots";
    case ErrorKind::InconsistentResonance: return "InconsistentResonance";
    case ErrorKind::DepthTooSmall: return "DepthTooSmall";
    case ErrorKind::HypothesisNotMet: return "HypothesisNotMet";
    case ErrorKind::EmptyInventory: return "EmptyInventory";
    case ErrorKind::SingularEncounter: return "SingularEncounter";
    case ErrorKind::ToleranceLoss: return "ToleranceLoss";
    case ErrorKind::Inconclusive: return "Inconclusive";
    case ErrorKind::PreconditionViolation: return "PreconditionViolation";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind)
{
}

namespace {

std::string format_parse_message(std::size_t position, const std::string& message,
                                 const std::vector<std::string>& expected)
{
    std::string out = "at position " + std::to_string(position) + ": " + message;
    if (!expected.empty()) {
        out += " (expected ";
        for (std::size_t i = 0; i < expected.size(); ++i) {
            if (i > 0) {
                out += i + 1 == expected.size() ? " or " : ", ";
            }
            out += expected[i];
        }
        out += ")";
    }
    return out;
}

} // namespace

ParseError::ParseError(ErrorKind kind, std::size_t position, const std::string& message,
                       std::vector<std::string> expected)
    : Error(kind, format_parse_message(position, message, expected)), position_(position),
      expected_(std::move(expected))
{
}

} // namespace bbsolve
