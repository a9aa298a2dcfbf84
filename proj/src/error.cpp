#include "ontolearn/error.hpp"

namespace ontolearn {

std::string_view error_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::ValidationError: return "ValidationError";
        case ErrorKind::IoError: return "IoError";
        case ErrorKind::UnknownChunk: return "UnknownChunk";
        case ErrorKind::SameDiscipline: return "SameDiscipline";
        case ErrorKind::InsufficientFacts: return "InsufficientFacts";
        case ErrorKind::UnknownQuestion: return "UnknownQuestion";
        case ErrorKind::DuplicateAnswer: return "DuplicateAnswer";
        case ErrorKind::UnresolvedDci: return "UnresolvedDci";
        case ErrorKind::UnknownBank: return "UnknownBank";
        case ErrorKind::EmptyBank: return "EmptyBank";
        case ErrorKind::UnknownSession: return "UnknownSession";
        case ErrorKind::SessionClosed: return "SessionClosed";
        case ErrorKind::AlreadyAnswered: return "AlreadyAnswered";
        case ErrorKind::ModeForbidden: return "ModeForbidden";
        case ErrorKind::UnknownDci: return "UnknownDci";
    }
    return "Error";
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(error_name(kind)) + ": " + detail),
      kind_(kind),
      detail_(detail) {}

}  // namespace ontolearn
