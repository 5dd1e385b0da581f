#include "scss/error.hpp"

namespace scss {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::CountMismatch: return "CountMismatch";
    case ErrorKind::RangeError: return "RangeError";
    case ErrorKind::NotATree: return "NotATree";
    case ErrorKind::CoverageViolation: return "CoverageViolation";
    case ErrorKind::ConnectivityViolation: return "ConnectivityViolation";
    case ErrorKind::InvalidDecomposition: return "InvalidDecomposition";
    case ErrorKind::CyclicInput: return "CyclicInput";
    case ErrorKind::UniverseMismatch: return "UniverseMismatch";
    case ErrorKind::ValueBoundExceeded: return "ValueBoundExceeded";
    case ErrorKind::WidthTooLarge: return "WidthTooLarge";
    case ErrorKind::BagMismatch: return "BagMismatch";
    case ErrorKind::TooManyVertices: return "TooManyVertices";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::InternalInconsistency: return "InternalInconsistency";
    case ErrorKind::InvalidReducedSolution: return "InvalidReducedSolution";
    case ErrorKind::InvalidGraph: return "InvalidGraph";
    case ErrorKind::NoApplicableEngine: return "NoApplicableEngine";
    case ErrorKind::BadParams: return "BadParams";
    }
    return "Error";
}

}  // namespace scss
