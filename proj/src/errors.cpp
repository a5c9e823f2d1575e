#include "torsionlab/errors.hpp"

namespace torsionlab {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NonChainComplex: return "NonChainComplex";
    case ErrorCode::BadRepresentation: return "BadRepresentation";
    case ErrorCode::NotAcyclicPreset: return "NotAcyclicPreset";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::NotAnEigenvalue: return "NotAnEigenvalue";
    case ErrorCode::NotAcyclic: return "NotAcyclic";
    case ErrorCode::PivotFailure: return "PivotFailure";
    case ErrorCode::StepTooLarge: return "StepTooLarge";
    case ErrorCode::PoleAtOne: return "PoleAtOne";
    case ErrorCode::PoleHit: return "PoleHit";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::BadParameter: return "BadParameter";
    case ErrorCode::UnsupportedPartition: return "UnsupportedPartition";
  }
  return "Unknown";
}

}  // namespace torsionlab
