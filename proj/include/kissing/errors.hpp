#pragma once

#include <stdexcept>
#include <string>

namespace kissing {

enum class ErrorCode {
  EulerViolation,
  Disconnected,
  MalformedRotation,
  NotSimple,
  TooLarge,
  DegreeTooSmall,
  LengthMismatch,
  NotOuterplanar,
  NotHamiltonianCycle,
  NotHamiltonian,
  NoConvergence,
  ResidualTooLarge,
  DegeneratePoints,
  DegenerateCircle,
  NotPolyhedral,
  WordNotReduced,
  ExplosionGuard,
  OutsideDomain,
  EscapedToOmega,
  AdjacentVertices,
  NotFound,
  LinkedLeaves,
  DegreeMismatch,
  NonInvariantLamination,
  CrossCheckMismatch,
  RootFindingFailure,
  NeutralDetected,
  CountMismatch,
  DepthInsufficient,
  BadDocument,
};

inline const char* error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::EulerViolation: return "EulerViolation";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::MalformedRotation: return "MalformedRotation";
    case ErrorCode::NotSimple: return "NotSimple";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::DegreeTooSmall: return "DegreeTooSmall";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NotOuterplanar: return "NotOuterplanar";
    case ErrorCode::NotHamiltonianCycle: return "NotHamiltonianCycle";
    case ErrorCode::NotHamiltonian: return "NotHamiltonian";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::ResidualTooLarge: return "ResidualTooLarge";
    case ErrorCode::DegeneratePoints: return "DegeneratePoints";
    case ErrorCode::DegenerateCircle: return "DegenerateCircle";
    case ErrorCode::NotPolyhedral: return "NotPolyhedral";
    case ErrorCode::WordNotReduced: return "WordNotReduced";
    case ErrorCode::ExplosionGuard: return "ExplosionGuard";
    case ErrorCode::OutsideDomain: return "OutsideDomain";
    case ErrorCode::EscapedToOmega: return "EscapedToOmega";
    case ErrorCode::AdjacentVertices: return "AdjacentVertices";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::LinkedLeaves: return "LinkedLeaves";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::NonInvariantLamination: return "NonInvariantLamination";
    case ErrorCode::CrossCheckMismatch: return "CrossCheckMismatch";
    case ErrorCode::RootFindingFailure: return "RootFindingFailure";
    case ErrorCode::NeutralDetected: return "NeutralDetected";
    case ErrorCode::CountMismatch: return "CountMismatch";
    case ErrorCode::DepthInsufficient: return "DepthInsufficient";
    case ErrorCode::BadDocument: return "BadDocument";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace kissing
