#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace betapenta {

enum class ErrorKind {
    NonConvergent,
    DomainError,
    OutsideStrip,
    PoleHit,
    DivergentParameter,
    DistributionalInput,
    NotIntegrable,
    InvalidHomomorphism,
    AutomorphicityViolation,
    DegenerateSample,
    ConfigError,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::NonConvergent: return "NonConvergent";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::OutsideStrip: return "OutsideStrip";
    case ErrorKind::PoleHit: return "PoleHit";
    case ErrorKind::DivergentParameter: return "DivergentParameter";
    case ErrorKind::DistributionalInput: return "DistributionalInput";
    case ErrorKind::NotIntegrable: return "NotIntegrable";
    case ErrorKind::InvalidHomomorphism: return "InvalidHomomorphism";
    case ErrorKind::AutomorphicityViolation: return "AutomorphicityViolation";
    case ErrorKind::DegenerateSample: return "DegenerateSample";
    case ErrorKind::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so that
/// verifiers can record it per sample instead of aborting a whole suite.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

} // namespace betapenta
