#include "algebroid/error.hpp"

namespace algebroid {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnknownVariable: return "UnknownVariable";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::AntisymmetryViolation: return "AntisymmetryViolation";
    case ErrorKind::AlgebroidMismatch: return "AlgebroidMismatch";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::JacobiViolation: return "JacobiViolation";
    case ErrorKind::NotABivector: return "NotABivector";
    case ErrorKind::BundleMismatch: return "BundleMismatch";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::NotTangent: return "NotTangent";
    case ErrorKind::ToleranceNotMet: return "ToleranceNotMet";
    case ErrorKind::NotALoop: return "NotALoop";
    case ErrorKind::NotAFixedPoint: return "NotAFixedPoint";
    case ErrorKind::BadOrder: return "BadOrder";
    case ErrorKind::DegreeOverflow: return "DegreeOverflow";
    case ErrorKind::ClosednessFailure: return "ClosednessFailure";
    case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

}  // namespace algebroid
