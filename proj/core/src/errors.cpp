#include "torfac/errors.hpp"

namespace torfac {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::DependentInput: return "DependentInput";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::NonSimplicialCone: return "NonSimplicialCone";
    case ErrorKind::VerticalRay: return "VerticalRay";
    case ErrorKind::NotPiStrictlyConvex: return "NotPiStrictlyConvex";
    case ErrorKind::NotFaceToFace: return "NotFaceToFace";
    case ErrorKind::NotAFace: return "NotAFace";
    case ErrorKind::OutsideSupport: return "OutsideSupport";
    case ErrorKind::PiIndependent: return "PiIndependent";
    case ErrorKind::NotACircuit: return "NotACircuit";
    case ErrorKind::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorKind::AlreadyNonsingular: return "AlreadyNonsingular";
    case ErrorKind::IterationCapExceeded: return "IterationCapExceeded";
    case ErrorKind::ProjectionNotAFan: return "ProjectionNotAFan";
    case ErrorKind::NotFiltrable: return "NotFiltrable";
    case ErrorKind::NotMinimal: return "NotMinimal";
    case ErrorKind::NotPiNonsingular: return "NotPiNonsingular";
    case ErrorKind::NotSmoothCenter: return "NotSmoothCenter";
    case ErrorKind::BadWeights: return "BadWeights";
    case ErrorKind::AInsideCone: return "AInsideCone";
    case ErrorKind::ChartMismatch: return "ChartMismatch";
    case ErrorKind::ZeroIdeal: return "ZeroIdeal";
    case ErrorKind::BadCertificate: return "BadCertificate";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::InternalInvariant: return "InternalInvariant";
  }
  return "Unknown";
}

}  // namespace torfac
