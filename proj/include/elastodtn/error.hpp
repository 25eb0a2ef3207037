// Copyright the elastodtn authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef ELASTODTN_ERROR_HPP
#define ELASTODTN_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace elastodtn
{

enum class ErrorCode
{
  NonPositiveArgument,
  OverflowRegime,
  DegenerateMode,
  InvalidRadii,
  InvalidMaterial,
  EmptyBoundary,
  NodeSetMismatch,
  ParseError,
  NonConforming,
  OrientationError,
  SingularElement,
  SingularSystem,
  MeshMismatch,
  OriginEvaluation,
  NotInteriorEdge,
  NotOuterEdge,
  ThetaOutOfRange,
  IterationCapReached,
  InsufficientData,
  InvalidConfig,
  IoError
};

std::string_view ErrorName(ErrorCode code);

//
// Single exception type for the library. The code identifies the failure class, the
// message carries the diagnostic.
//
class Error : public std::runtime_error
{
public:
  Error(ErrorCode code, const std::string &what)
    : std::runtime_error(std::string(ErrorName(code)) + ": " + what), code_(code)
  {
  }

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

}  // namespace elastodtn

#endif  // ELASTODTN_ERROR_HPP
