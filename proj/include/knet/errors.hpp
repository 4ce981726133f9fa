#pragma once

#include <stdexcept>
#include <string>

namespace knet {

enum class ErrorCode {
  // geometry
  NonUnitAxis,
  DimensionMismatch,
  // point sets
  NotOnSphere,
  DiamZero,
  DiamTooLarge,
  // witness construction
  RankDeficient,
  NoFacetFound,
  DegenerateSpan,
  NoRealRoot,
  StarInequalityViolated,
  CyclicMapFailure,
  // certification
  TooLarge,
  MalformedCertificate,
  // quaternions
  NonUnitQuaternion,
  NotSpecialOrthogonal,
  DecompositionResidual,
  // circle
  FullCircle,
  NotInF1,
  NotContained,
  ClearanceTooSmall,
  // generic
  InvalidParams,
  InternalError,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace knet
