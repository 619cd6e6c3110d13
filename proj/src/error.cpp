#include "packlab/error.hpp"

namespace packlab {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_input: return "InvalidInput";
    case ErrorCode::degenerate_quadruple: return "DegenerateQuadruple";
    case ErrorCode::zero_curvature: return "ZeroCurvature";
    case ErrorCode::unbounded_root: return "UnboundedRoot";
    case ErrorCode::overflow: return "Overflow";
    case ErrorCode::frontier_overflow: return "FrontierOverflow";
    case ErrorCode::insufficient_data: return "InsufficientData";
    case ErrorCode::insufficient_resolution: return "InsufficientResolution";
    case ErrorCode::no_loxodromics: return "NoLoxodromics";
    case ErrorCode::empty_denominator: return "EmptyDenominator";
    case ErrorCode::not_loxodromic: return "NotLoxodromic";
    case ErrorCode::insufficient_concyclic: return "InsufficientConcyclic";
    case ErrorCode::mismatched_pairing: return "MismatchedPairing";
    case ErrorCode::not_schottky: return "NotSchottky";
  }
  return "Unknown";
}

ErrorKind kind_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::overflow:
      return ErrorKind::overflow;
    case ErrorCode::degenerate_quadruple:
    case ErrorCode::no_loxodromics:
    case ErrorCode::empty_denominator:
    case ErrorCode::not_loxodromic:
    case ErrorCode::insufficient_concyclic:
      return ErrorKind::degenerate;
    case ErrorCode::frontier_overflow:
    case ErrorCode::insufficient_data:
    case ErrorCode::insufficient_resolution:
      return ErrorKind::insufficient_data;
    default:
      return ErrorKind::invalid_input;
  }
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_input: return 2;
    case ErrorKind::overflow: return 3;
    case ErrorKind::degenerate: return 4;
    case ErrorKind::insufficient_data: return 5;
  }
  return 1;
}

}  // namespace packlab
