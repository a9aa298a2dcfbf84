#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ontolearn {

enum class ErrorKind {
    ParseError,
    ValidationError,
    IoError,
    UnknownChunk,
    SameDiscipline,
    InsufficientFacts,
    UnknownQuestion,
    DuplicateAnswer,
    UnresolvedDci,
    UnknownBank,
    EmptyBank,
    UnknownSession,
    SessionClosed,
    AlreadyAnswered,
    ModeForbidden,
    UnknownDci,
};

// Stable name used on the wire ({"error": <name>}) and in CLI diagnostics.
std::string_view error_name(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& detail);

    ErrorKind kind() const noexcept { return kind_; }
    std::string_view name() const noexcept { return error_name(kind_); }
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorKind kind_;
    std::string detail_;
};

}  // namespace ontolearn
