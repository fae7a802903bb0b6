#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace netslice {

// Coarse error categories; the CLI maps them to exit codes.
enum class ErrorKind {
    Usage,          // bad invocation or malformed input file
    Infeasible,     // no allocation satisfies the intent
    SecurityDenied, // authentication/authorization/token failure
    DataError,      // dataset or store content problems
    DomainFailure,  // a domain rejected or failed an operation
    Internal,       // caller bug (illegal transition, dimension mismatch, ...)
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string message)
        : std::runtime_error(std::move(message)), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline std::string_view error_kind_name(ErrorKind k) {
    switch (k) {
    case ErrorKind::Usage: return "Usage";
    case ErrorKind::Infeasible: return "Infeasible";
    case ErrorKind::SecurityDenied: return "SecurityDenied";
    case ErrorKind::DataError: return "DataError";
    case ErrorKind::DomainFailure: return "DomainFailure";
    case ErrorKind::Internal: return "Internal";
    }
    return "Unknown";
}

inline Error usage_error(std::string msg) { return Error(ErrorKind::Usage, std::move(msg)); }
inline Error infeasible_error(std::string msg) { return Error(ErrorKind::Infeasible, std::move(msg)); }
inline Error data_error(std::string msg) { return Error(ErrorKind::DataError, std::move(msg)); }
inline Error internal_error(std::string msg) { return Error(ErrorKind::Internal, std::move(msg)); }
inline Error security_error(std::string msg) { return Error(ErrorKind::SecurityDenied, std::move(msg)); }
inline Error domain_error(std::string msg) { return Error(ErrorKind::DomainFailure, std::move(msg)); }

} // namespace netslice
