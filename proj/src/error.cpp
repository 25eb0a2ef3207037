// Copyright the elastodtn authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "elastodtn/error.hpp"

namespace elastodtn
{

std::string_view ErrorName(ErrorCode code)
{
  switch (code)
  {
    case ErrorCode::NonPositiveArgument:
      return "NonPositiveArgument";
    case ErrorCode::OverflowRegime:
      return "OverflowRegime";
    case ErrorCode::DegenerateMode:
      return "DegenerateMode";
    case ErrorCode::InvalidRadii:
      return "InvalidRadii";
    case ErrorCode::InvalidMaterial:
      return "InvalidMaterial";
    case ErrorCode::EmptyBoundary:
      return "EmptyBoundary";
    case ErrorCode::NodeSetMismatch:
      return "NodeSetMismatch";
    case ErrorCode::ParseError:
      return "ParseError";
    case ErrorCode::NonConforming:
      return "NonConforming";
    case ErrorCode::OrientationError:
      return "OrientationError";
    case ErrorCode::SingularElement:
      return "SingularElement";
    case ErrorCode::SingularSystem:
      return "SingularSystem";
    case ErrorCode::MeshMismatch:
      return "MeshMismatch";
    case ErrorCode::OriginEvaluation:
      return "OriginEvaluation";
    case ErrorCode::NotInteriorEdge:
      return "NotInteriorEdge";
    case ErrorCode::NotOuterEdge:
      return "NotOuterEdge";
    case ErrorCode::ThetaOutOfRange:
      return "ThetaOutOfRange";
    case ErrorCode::IterationCapReached:
      return "IterationCapReached";
    case ErrorCode::InsufficientData:
      return "InsufficientData";
    case ErrorCode::InvalidConfig:
      return "InvalidConfig";
    case ErrorCode::IoError:
      return "IoError";
  }
  return "Unknown";
}

}  // namespace elastodtn
